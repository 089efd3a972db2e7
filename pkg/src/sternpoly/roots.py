"""Rational roots of Stern polynomials.

Covers the classification scan (every rational root of every B_n lies in
{0, -1, -1/2, -1/3}), the strict inequality that drives the proof,
membership predicates and exhaustive member lists for the four root sets,
the doubling/shift closure of the zero sets at -1/2 and -1/3, and exact
zero densities along powers of two.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import tables
from .core import eval_exact
from .report import VerificationReport, fail_report, pass_report

__all__ = [
    "ADMISSIBLE_ROOTS",
    "root_membership",
    "r_members",
    "rational_root_scan",
    "verify_halfmax_inequality",
    "verify_closure",
    "verify_scaling",
    "density_at_powers",
]

ADMISSIBLE_ROOTS = (Fraction(0), Fraction(-1), Fraction(-1, 2), Fraction(-1, 3))

# zero indices at -1/2 are multiples of 5, at -1/3 multiples of 21
_BASE_MULTIPLE = {Fraction(-1, 2): 5, Fraction(-1, 3): 21}
_SHIFT_RATIO = {Fraction(-1, 2): Fraction(1, 4), Fraction(-1, 3): Fraction(1, 27)}


def _as_root(a) -> Fraction:
    a = Fraction(a)
    if a not in ADMISSIBLE_ROOTS:
        raise ValueError(f"{a} is not an admissible root value")
    return a


def _as_unit_root(a) -> Fraction:
    a = _as_root(a)
    if a not in _BASE_MULTIPLE:
        raise ValueError(f"operation requires -1/2 or -1/3, got {a}")
    return a


def _value_table(a: Fraction, n_max: int) -> np.ndarray:
    """Exact zero-detecting value table for B_n(a): plain values at the
    integer points, scaled integers z_n = k^lvl * B_n(-1/k) otherwise."""
    if a.denominator == 1:
        return tables.point_eval_table(int(a), n_max)
    return tables.scaled_eval_table(a.denominator, n_max)


def root_membership(n: int, a) -> bool:
    """Is B_n(a) = 0?  n = 0 belongs to every root set (B_0 is zero)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    a = _as_root(a)
    if n == 0:
        return True
    if a == 0:
        return n % 2 == 0
    if a == -1:
        return n % 3 == 0
    if n % _BASE_MULTIPLE[a]:
        return False
    return eval_exact(n, a) == 0


def r_members(a, n_max: int, *, values: np.ndarray | None = None) -> list[int]:
    """All members of the root set of a up to n_max, by exhaustive exact scan."""
    a = _as_root(a)
    if values is None:
        values = _value_table(a, n_max)
    return [int(i) for i in np.nonzero(values[: n_max + 1] == 0)[0]]


def density_at_powers(a, imax: int) -> list[Fraction]:
    """Exact zero densities d_{2^i} = #{0 <= n < 2^i : B_n(a) = 0} / 2^i."""
    a = _as_root(a)
    if imax > 26:
        raise ValueError("table would not fit in memory")
    values = _value_table(a, (1 << imax) - 1)
    counts = tables.zero_prefix_counts(values, imax)
    return [Fraction(c, 1 << i) for i, c in enumerate(counts)]


def _divisor_lists(n_max: int) -> list[list[int]]:
    divs: list[list[int]] = [[] for _ in range(n_max + 1)]
    for d in range(1, n_max + 1):
        for v in range(d, n_max + 1, d):
            divs[v].append(d)
    return divs


def rational_root_scan(
    n_max: int,
    *,
    P: np.ndarray | None = None,
    e: np.ndarray | None = None,
) -> VerificationReport:
    """Enumerate all rational roots of B_1..B_{n_max} and classify them.

    By the rational root theorem a root r/s in lowest terms has r dividing
    the lowest nonzero coefficient and s dividing the leading one.  The
    rows checked here have non-negative entries (no positive roots) and
    odd rows have constant term 1, so candidates at odd n are exactly
    -1/d with d dividing the leading coefficient; even rows are shifted
    odd rows and only add the root 0.  Candidates d <= 3 are decided for
    every index by one exact vectorized evaluation; candidates d >= 4 are
    pruned by the two divisibility facts a factor (d*t + 1) forces,
    (d+1) | B_n(1) and (d-1) | B_n(-1), then settled exactly.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    claim = "rational-roots-classified"
    domain = f"1 <= n <= {n_max}"
    if e is None:
        e = tables.degree_table(n_max)
    if P is None:
        P = tables.coeff_table(n_max, e)
    width = P.shape[1]

    if int(P.min()) < 0:
        raise RuntimeError("coefficient table has a negative entry")
    if not (P[1: n_max + 1: 2, 0] == 1).all():
        raise RuntimeError("odd row with constant term != 1")

    # exact values at -1, -1/2, -1/3 for every row, via integral weights
    signed_values = {}
    for d in (1, 2, 3):
        w = np.array(
            [(-1) ** i * d ** (width - 1 - i) for i in range(width)],
            dtype=np.int64,
        )
        v = np.empty(n_max + 1, dtype=np.int64)
        for lo in range(0, n_max + 1, 1 << 16):
            hi = min(lo + (1 << 16), n_max + 1)
            v[lo:hi] = P[lo:hi].astype(np.int64) @ w
        signed_values[d] = v

    hit_counts = {
        "0": int(np.count_nonzero(P[1: n_max + 1, 0] == 0)),
        "-1": int(np.count_nonzero(signed_values[1][1: n_max + 1] == 0)),
        "-1/2": int(np.count_nonzero(signed_values[2][1: n_max + 1] == 0)),
        "-1/3": int(np.count_nonzero(signed_values[3][1: n_max + 1] == 0)),
    }

    lead = P[np.arange(n_max + 1), np.maximum(e[: n_max + 1], 0)]
    row_sums = P[: n_max + 1].sum(axis=1, dtype=np.int64)
    divs = _divisor_lists(int(lead[1:].max()))

    lead_l = lead.tolist()
    sums_l = row_sums.tolist()
    neg1_l = signed_values[1].tolist()
    e_l = e.tolist()
    candidates = exact_tests = 0
    offenders: list[tuple[int, int]] = []
    for n in range(3, n_max + 1, 2):
        leading = lead_l[n]
        if leading < 4:
            continue
        sn = sums_l[n]
        w1 = neg1_l[n]
        for d in divs[leading]:
            if d < 4:
                continue
            candidates += 1
            if sn % (d + 1) or w1 % (d - 1):
                continue
            exact_tests += 1
            deg = e_l[n]
            row = P[n]
            value = sum(
                int(row[i]) * (-1) ** i * d ** (deg - i) for i in range(deg + 1)
            )
            if value == 0:
                offenders.append((n, d))

    stats = {
        "hits": hit_counts,
        "candidates_d_ge_4": candidates,
        "exact_tests_d_ge_4": exact_tests,
    }
    if offenders:
        n, d = offenders[0]
        return fail_report(
            claim, domain, {"n": n, "root": Fraction(-1, d)}, **stats
        )
    return pass_report(claim, domain, **stats)


def verify_halfmax_inequality(k: int, n_max: int) -> VerificationReport:
    """For b_n = B_n(-1/k) with k >= 4, check exactly that
    b_{2n+1} > max(|b_n|, |b_{n+1}|)/2 > 0 for all 0 <= n <= n_max.

    Works on the scaled table z_n = k^lvl * b_n; both sides of the
    inequality are multiplied by 2*k^(lvl+1), which keeps every
    comparison in (guarded) int64 arithmetic.
    """
    if k < 4:
        raise ValueError("k must be at least 4")
    claim = f"odd-values-dominate-half-max(k={k})"
    domain = f"0 <= n <= {n_max}"
    z = tables.scaled_eval_table(k, 2 * n_max + 2)

    # n = 0 separately: b_1 = 1 > max(0, 1)/2
    if not Fraction(1) > Fraction(1, 2) > 0:
        return fail_report(claim, domain, {"n": 0, "k": k})

    level = 0
    while (1 << level) <= n_max:
        lo = 1 << level
        hi = min(1 << (level + 1), n_max + 1)
        n = np.arange(lo, hi)
        lhs = 2 * z[2 * n + 1]
        # the factor on |z_{n+1}| drops to 1 when n+1 crosses to the next level
        fac = np.full(n.shape, k, dtype=np.int64)
        fac[n == 2 * lo - 1] = 1
        rhs = np.maximum(k * np.abs(z[n]), fac * np.abs(z[n + 1]))
        ok = (lhs > rhs) & (rhs > 0)
        if not ok.all():
            bad = int(n[np.nonzero(~ok)[0][0]])
            return fail_report(claim, domain, {"n": bad, "k": k}, n_max=n_max)
        level += 1
    return pass_report(claim, domain, k=k, n_max=n_max)


def verify_closure(
    a,
    n_max: int,
    *,
    shifts: int = 3,
    values: np.ndarray | None = None,
) -> VerificationReport:
    """Structure of the zero set of B_n(a) on [1, n_max], a in {-1/2, -1/3}.

    For every member m: m is a multiple of the base (5 resp. 21), 2m is a
    member, and the shifted indices base*2^k +- m are members for the
    first `shifts` valid exponents of each sign (2^k >= m for +, 2^k > m
    for -), checked through the exact identity
    B_{base*2^k +- m}(a) = -+ ratio * B_m(a) with ratio 1/4 resp. 1/27.
    """
    a = _as_unit_root(a)
    base = _BASE_MULTIPLE[a]
    ratio = _SHIFT_RATIO[a]
    claim = f"zero-set-closure({a})"
    domain = f"members <= {n_max}"
    if values is None:
        values = _value_table(a, 2 * n_max)
    members = np.nonzero(values[: n_max + 1] == 0)[0]
    checked_shifts = 0
    for m in (int(v) for v in members):
        if m == 0:
            continue
        if m % base:
            return fail_report(claim, domain, {"m": m, "check": "base-multiple"})
        if values[2 * m] != 0:
            return fail_report(claim, domain, {"m": m, "check": "doubling"})
        bm = eval_exact(m, a)
        if bm != 0:
            return fail_report(claim, domain, {"m": m, "check": "member-eval"})
        k_plus = (m - 1).bit_length()  # smallest k with 2^k >= m
        k_minus = m.bit_length()       # smallest k with 2^k > m
        for j in range(shifts):
            kp = k_plus + j
            if eval_exact(base * 2**kp + m, a) != -ratio * bm:
                return fail_report(
                    claim, domain, {"m": m, "k": kp, "sign": "+"}
                )
            km = k_minus + j
            if eval_exact(base * 2**km - m, a) != ratio * bm:
                return fail_report(
                    claim, domain, {"m": m, "k": km, "sign": "-"}
                )
            checked_shifts += 2
    return pass_report(
        claim,
        domain,
        member_count=len(members) - (1 if len(members) and members[0] == 0 else 0),
        shift_checks=checked_shifts,
        base=base,
    )


def verify_scaling(a, n_max: int, k_max: int) -> VerificationReport:
    """Exact shifted-index identity over all 1 <= n <= n_max, k <= k_max:
    B_{base*2^k + n}(a) = -ratio*B_n(a) for 2^k >= n, and
    B_{base*2^k - n}(a) = +ratio*B_n(a) for 2^k > n.
    """
    a = _as_unit_root(a)
    base = _BASE_MULTIPLE[a]
    ratio = _SHIFT_RATIO[a]
    claim = f"shift-scaling-identity({a})"
    domain = f"1 <= n <= {n_max}, k <= {k_max}"
    checked = 0
    for n in range(1, n_max + 1):
        bn = eval_exact(n, a)
        for k in range((n - 1).bit_length(), k_max + 1):
            if eval_exact(base * 2**k + n, a) != -ratio * bn:
                return fail_report(claim, domain, {"n": n, "k": k, "sign": "+"})
            checked += 1
        for k in range(n.bit_length(), k_max + 1):
            if eval_exact(base * 2**k - n, a) != ratio * bn:
                return fail_report(claim, domain, {"n": n, "k": k, "sign": "-"})
            checked += 1
    return pass_report(claim, domain, identity_checks=checked)
