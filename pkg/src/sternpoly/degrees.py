"""Runs of equal degrees among consecutive Stern polynomials.

The index sets {n : deg B_n = deg B_{n+1}} and {n : three equal degrees in
a row} have closed forms built from the families p_k = (4^k - 1)/3 and
q_k = (5*4^k - 2)/3.  This module provides the closed-form membership
tests, the eight-pattern classifier of binary expansions that proves the
pair characterization, and brute-force verification sweeps against the
degree recurrence.  No four consecutive equal degrees exist; the sweep
checks that too.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tables
from .report import VerificationReport, fail_report, pass_report
from .words import p_val, q_val

__all__ = [
    "CaseTag",
    "EQUAL_PAIR_TAGS",
    "classify_case",
    "pair_set_member",
    "triple_set_member",
    "pair_mask",
    "triple_mask",
    "verify_pair",
    "verify_triple",
    "verify_no_quad",
]

TAGS = ("i", "ii", "iii", "iv", "v", "vi", "vii", "viii")

# exactly the patterns whose neighbours share a degree
EQUAL_PAIR_TAGS = frozenset({"iii", "vii", "viii"})


@dataclass(frozen=True)
class CaseTag:
    """One of the eight binary-expansion patterns, with its parameters."""

    tag: str
    m: int | None = None
    k: int | None = None


def _rebuild(tag: CaseTag) -> int:
    """Reconstruct the classified index from its pattern parameters."""
    t, m, k = tag.tag, tag.m, tag.k
    if t == "i":
        return 4 * k
    if t == "ii":
        return 4 * k + 3
    if t == "iii":  # bin(m) 0 (01)^k
        return (m << (2 * k + 1)) + p_val(k)
    if t == "iv":  # bin(m) 11 (01)^k
        return ((4 * m + 3) << (2 * k)) + p_val(k)
    if t == "v":  # (01)^k
        return p_val(k)
    if t == "vi":  # bin(m) 00 (10)^k
        return (m << (2 * k + 2)) + 2 * p_val(k)
    if t == "vii":  # (10)^k
        return 2 * p_val(k)
    if t == "viii":  # bin(m) 1 (10)^k; m = 0 gives q_k itself
        return (m << (2 * k + 1)) + q_val(k)
    raise ValueError(f"unknown tag {t!r}")


def classify_case(n: int) -> CaseTag:
    """The unique binary-expansion pattern matching n >= 1.

    Indices 0 and 3 mod 4 are their own cases.  For 1 mod 4 the trailing
    maximal run of '01' blocks is stripped; the remainder decides between
    bin(m) 0 (01)^k, bin(m) 11 (01)^k and the pure word (01)^k (whose value
    is p_k).  For 2 mod 4 the analogous split on '10' blocks decides
    between bin(m) 00 (10)^k, bin(m) 1 (10)^k and (10)^k (value 2*p_k).
    """
    if n < 1:
        raise ValueError("n must be positive")
    r = n % 4
    if r == 0:
        tag = CaseTag("i", None, n // 4)
    elif r == 3:
        tag = CaseTag("ii", None, n // 4)
    elif r == 1:
        x, k = n, 0
        while x & 3 == 1:
            x >>= 2
            k += 1
        if x == 0:
            tag = CaseTag("v", None, k)
        elif x & 1 == 0:
            tag = CaseTag("iii", x >> 1, k)
        else:  # x ends in 11: a longer 01-run is impossible
            tag = CaseTag("iv", x >> 2, k)
    else:
        x, k = n, 0
        while x & 3 == 2:
            x >>= 2
            k += 1
        if x == 0:
            tag = CaseTag("vii", None, k)
        elif x & 1:
            tag = CaseTag("viii", x >> 1, k)
        else:  # x ends in 00
            tag = CaseTag("vi", x >> 2, k)
    if _rebuild(tag) != n:
        raise RuntimeError(f"pattern match failed to reconstruct {n}")
    return tag


def _is_power_of_four(x: int) -> bool:
    return x > 0 and x & (x - 1) == 0 and (x.bit_length() - 1) % 2 == 0


def pair_set_member(n: int) -> bool:
    """Closed-form membership in {n : deg B_n = deg B_{n+1}}.

    The set is the union of {m*2^(2k+1) + p_k : m, k >= 1}, {2*p_k : k >= 1}
    and {m*2^(2k+1) + q_k : m >= 0, k >= 1}; membership is decided by
    residue extraction against each feasible k.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2 == 0:
        doubled = 3 * n + 2
        if doubled % 2 == 0 and _is_power_of_four(doubled // 2):
            return True
    k = 1
    while True:
        step = 1 << (2 * k + 1)
        pk = p_val(k)
        qk = q_val(k)
        if pk + step > n and qk > n:
            return False
        if n >= pk + step and (n - pk) % step == 0:
            return True
        if n >= qk and (n - qk) % step == 0:
            return True
        k += 1


def triple_set_member(n: int) -> bool:
    """Closed-form membership in {n : deg B_n = deg B_{n+1} = deg B_{n+2}},
    the union of {m*2^(2k+1) + p_k : m >= 1, k >= 2}, {2*p_k - 1 : k >= 2}
    and {m*2^(2k+1) + q_k - 1 : m >= 0, k >= 2}."""
    if n < 1:
        raise ValueError("n must be positive")
    doubled = 3 * (n + 1) + 2
    if doubled % 2 == 0:
        half = doubled // 2
        if _is_power_of_four(half) and half >= 16:
            return True
    k = 2
    while True:
        step = 1 << (2 * k + 1)
        pk = p_val(k)
        qk1 = q_val(k) - 1
        if pk + step > n and qk1 > n:
            return False
        if n >= pk + step and (n - pk) % step == 0:
            return True
        if n >= qk1 and (n - qk1) % step == 0:
            return True
        k += 1


def pair_mask(n_max: int) -> np.ndarray:
    """Boolean closed-form membership mask over [0, n_max] (index 0 unused)."""
    mask = np.zeros(n_max + 1, dtype=bool)
    k = 1
    while True:
        step = 1 << (2 * k + 1)
        pk = p_val(k)
        qk = q_val(k)
        if pk + step > n_max and 2 * pk > n_max and qk > n_max:
            return mask
        if pk + step <= n_max:
            mask[pk + step:: step] = True
        if 2 * pk <= n_max:
            mask[2 * pk] = True
        if qk <= n_max:
            mask[qk:: step] = True
        k += 1


def triple_mask(n_max: int) -> np.ndarray:
    """Boolean closed-form triple-membership mask over [0, n_max]."""
    mask = np.zeros(n_max + 1, dtype=bool)
    k = 2
    while True:
        step = 1 << (2 * k + 1)
        pk = p_val(k)
        qk1 = q_val(k) - 1
        if pk + step > n_max and 2 * pk - 1 > n_max and qk1 > n_max:
            return mask
        if pk + step <= n_max:
            mask[pk + step:: step] = True
        if 2 * pk - 1 <= n_max:
            mask[2 * pk - 1] = True
        if qk1 <= n_max:
            mask[qk1:: step] = True
        k += 1


def _degrees(n_max: int, e: np.ndarray | None) -> np.ndarray:
    if e is None or len(e) < n_max + 1:
        return tables.degree_table(n_max)
    return e


def verify_pair(n_max: int, *, e: np.ndarray | None = None) -> VerificationReport:
    """Equal-degree pairs on [1, n_max]: recurrence-computed degrees against
    the closed form, the per-index membership test, and the pattern
    classifier (which must match exactly one case per index, with the
    equal-degree cases iii/vii/viii)."""
    claim = "equal-degree-pairs"
    domain = f"1 <= n <= {n_max}"
    e = _degrees(n_max + 1, e)
    brute = e[1: n_max + 1] == e[2: n_max + 2]
    closed = pair_mask(n_max)[1:]
    diff = np.nonzero(brute != closed)[0]
    if diff.size:
        n = int(diff[0]) + 1
        return fail_report(claim, domain, {"n": n, "check": "closed-vs-degrees"})
    counts = dict.fromkeys(TAGS, 0)
    closed_l = closed.tolist()
    for n in range(1, n_max + 1):
        tag = classify_case(n)
        counts[tag.tag] += 1
        member = closed_l[n - 1]
        if pair_set_member(n) != member:
            return fail_report(claim, domain, {"n": n, "check": "member-fn"})
        if (tag.tag in EQUAL_PAIR_TAGS) != member:
            return fail_report(
                claim, domain, {"n": n, "check": "classifier", "tag": tag.tag}
            )
    return pass_report(
        claim, domain, members=int(closed.sum()), case_counts=counts
    )


def verify_triple(n_max: int, *, e: np.ndarray | None = None) -> VerificationReport:
    """Equal-degree triples on [1, n_max]: degrees against the closed form,
    the per-index test, and the set identity triple = pairs intersected
    with (pairs - 1)."""
    claim = "equal-degree-triples"
    domain = f"1 <= n <= {n_max}"
    e = _degrees(n_max + 2, e)
    brute = (e[1: n_max + 1] == e[2: n_max + 2]) & (
        e[2: n_max + 2] == e[3: n_max + 3]
    )
    closed = triple_mask(n_max)[1:]
    diff = np.nonzero(brute != closed)[0]
    if diff.size:
        n = int(diff[0]) + 1
        return fail_report(claim, domain, {"n": n, "check": "closed-vs-degrees"})
    pairs = pair_mask(n_max + 1)
    intersection = pairs[1: n_max + 1] & pairs[2: n_max + 2]
    if (intersection != closed).any():
        n = int(np.nonzero(intersection != closed)[0][0]) + 1
        return fail_report(claim, domain, {"n": n, "check": "pair-intersection"})
    closed_l = closed.tolist()
    for n in range(1, n_max + 1):
        if triple_set_member(n) != closed_l[n - 1]:
            return fail_report(claim, domain, {"n": n, "check": "member-fn"})
    return pass_report(claim, domain, members=int(closed.sum()))


def verify_no_quad(n_max: int, *, e: np.ndarray | None = None) -> VerificationReport:
    """No index n <= n_max starts four consecutive equal degrees."""
    claim = "no-equal-degree-quadruple"
    domain = f"1 <= n <= {n_max}"
    e = _degrees(n_max + 3, e)
    runs = (
        (e[1: n_max + 1] == e[2: n_max + 2])
        & (e[2: n_max + 2] == e[3: n_max + 3])
        & (e[3: n_max + 3] == e[4: n_max + 4])
    )
    hits = np.nonzero(runs)[0]
    if hits.size:
        return fail_report(claim, domain, {"n": int(hits[0]) + 1})
    return pass_report(claim, domain, triples_checked=n_max)
