"""The pair-state machine over F_p x F_p behind the mod-p zero densities.

States are pairs (alpha, beta); reading a 0 bit maps (a, b) to (t*a+b, b)
and reading a 1 bit maps (a, b) to (a, a+t*b), where t is the image of the
evaluation point in F_p.  Feeding the bits of n least-significant first
from the initial state (1, 0) and projecting onto beta yields
B_n(t) mod p.  Both edge maps are linear bijections, so the reachable
component is strongly connected and 2-in/2-out regular, its halved
adjacency matrix is doubly stochastic, and the Cesàro average of its
powers tends to the flat matrix 1/K.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import Residue, eval_exact, is_prime
from .report import VerificationReport, fail_report, pass_report

__all__ = [
    "TARGETS",
    "Dfao",
    "DfaoAnalysis",
    "build_dfao",
    "dfao_run",
    "output_range",
    "analyze",
    "cesaro_check",
    "density_counts_dfao",
    "density_cesaro_averages",
    "periodicity_search",
    "export_dot",
    "verify_aperiodicity_witness",
]

TARGETS = (Fraction(-1, 2), Fraction(-1, 3))


@dataclass(frozen=True)
class Dfao:
    """Immutable machine: states 0..p^2-1 encode (alpha, beta) as alpha*p + beta."""

    p: int
    t: int
    target: Fraction
    edge0: np.ndarray
    edge1: np.ndarray
    initial: int

    @property
    def n_states(self) -> int:
        return len(self.edge0)

    def output(self, state: int) -> int:
        return state % self.p

    def label(self, state: int) -> tuple[int, int]:
        return divmod(state, self.p)


def build_dfao(p: int, target: Fraction | str) -> Dfao:
    """Full p^2-state machine for B_n(target) mod p, initial state (1, 0)."""
    target = Fraction(target)
    if target not in TARGETS:
        raise ValueError(f"target must be one of {TARGETS}, got {target}")
    if p <= 3 or not is_prime(p):
        raise ValueError("p must be a prime greater than 3")
    if target.denominator % p == 0:
        raise ValueError(f"p = {p} divides the denominator of {target}")
    t = (target.numerator * pow(target.denominator, -1, p)) % p
    alpha, beta = np.divmod(np.arange(p * p, dtype=np.int64), p)
    edge0 = ((t * alpha + beta) % p) * p + beta
    edge1 = alpha * p + (alpha + t * beta) % p
    return Dfao(p, t, target, edge0, edge1, p)


def dfao_run(dfao: Dfao, n: int) -> Residue:
    """Feed the bits of n least-significant first; project the final state."""
    if n < 0:
        raise ValueError("n must be non-negative")
    s = dfao.initial
    e0, e1 = dfao.edge0, dfao.edge1
    while n:
        s = int(e1[s]) if n & 1 else int(e0[s])
        n >>= 1
    return Residue(int(s) % dfao.p, dfao.p)


def output_range(dfao: Dfao, count: int) -> np.ndarray:
    """Machine outputs for every n < count at once.

    All indices are padded to the same bit width; the padding bits are 0
    and 0-edges preserve the output coordinate, so the projections agree
    with per-index runs.
    """
    states = np.full(count, dfao.initial, dtype=np.int64)
    n = np.arange(count)
    for j in range(int(count - 1).bit_length() if count > 1 else 0):
        bit = (n >> j) & 1
        states = np.where(bit == 1, dfao.edge1[states], dfao.edge0[states])
    return states % dfao.p


@dataclass(frozen=True)
class DfaoAnalysis:
    """Reachability structure of one machine."""

    p: int
    reachable: tuple[int, ...]
    strongly_connected: bool
    regular_2in_2out: bool
    zero_output_count: int
    ord_t: int

    @property
    def reachable_count(self) -> int:
        return len(self.reachable)

    @property
    def zero_bound_ok(self) -> bool:
        """Z/K <= 2/log2(p), compared exactly as p^Z <= 4^K."""
        return self.p**self.zero_output_count <= 4**self.reachable_count

    @property
    def ord_bound_ok(self) -> bool:
        """ord(t) >= log2(p)/2 - 1, compared exactly as 4^(ord+1) >= p."""
        return 4 ** (self.ord_t + 1) >= self.p


def _closure(start: int, *edge_arrays: np.ndarray) -> np.ndarray:
    size = len(edge_arrays[0])
    seen = np.zeros(size, dtype=bool)
    seen[start] = True
    frontier = np.array([start])
    while frontier.size:
        nxt = np.unique(np.concatenate([e[frontier] for e in edge_arrays]))
        frontier = nxt[~seen[nxt]]
        seen[frontier] = True
    return seen


def analyze(dfao: Dfao) -> DfaoAnalysis:
    """Reachable set, strong connectivity, 2-in/2-out regularity, zero-output
    count and the multiplicative order of t."""
    forward = _closure(dfao.initial, dfao.edge0, dfao.edge1)
    # both edge maps are bijections; BFS backward runs over their inverses
    inv0 = np.empty_like(dfao.edge0)
    inv0[dfao.edge0] = np.arange(dfao.n_states)
    inv1 = np.empty_like(dfao.edge1)
    inv1[dfao.edge1] = np.arange(dfao.n_states)
    backward = _closure(dfao.initial, inv0, inv1)
    reachable = np.nonzero(forward)[0]
    strongly_connected = bool(backward[reachable].all())

    in_deg = np.bincount(
        np.concatenate([dfao.edge0[reachable], dfao.edge1[reachable]]),
        minlength=dfao.n_states,
    )
    closed = bool(forward[dfao.edge0[reachable]].all()) and bool(
        forward[dfao.edge1[reachable]].all()
    )
    regular = closed and bool((in_deg[reachable] == 2).all())

    zero_outputs = int((reachable % dfao.p == 0).sum())
    ord_t, acc = 1, dfao.t % dfao.p
    while acc != 1:
        acc = (acc * dfao.t) % dfao.p
        ord_t += 1
    return DfaoAnalysis(
        dfao.p,
        tuple(int(s) for s in reachable),
        strongly_connected,
        regular,
        zero_outputs,
        ord_t,
    )


def _geometric_sum(A: np.ndarray, T: int) -> tuple[np.ndarray, np.ndarray]:
    """(I + A + ... + A^T, A^(T+1)) by doubling, O(log T) matrix products."""
    if T == 0:
        return np.eye(len(A)), A.copy()
    if T % 2:
        S, P = _geometric_sum(A, (T - 1) // 2)  # P = A^((T+1)/2)
        return S + P @ S, P @ P
    S, P = _geometric_sum(A, T - 1)
    return S + P, P @ A


def cesaro_check(
    dfao: Dfao,
    T: int = 10_000,
    tol: float = 1e-3,
    *,
    analysis: DfaoAnalysis | None = None,
) -> VerificationReport:
    """Cesàro average of the halved adjacency matrix over the reachable
    component: every entry of (I + A + ... + A^T)/(T+1) must be within tol
    of 1/K, and the average must commute with A to within tol."""
    claim = f"cesaro-flat-limit(p={dfao.p},t={dfao.target})"
    domain = f"T = {T}, tol = {tol}"
    if analysis is None:
        analysis = analyze(dfao)
    if not (analysis.strongly_connected and analysis.regular_2in_2out):
        return fail_report(claim, domain, {"check": "component-structure"})
    reach = np.array(analysis.reachable)
    K = len(reach)
    index = np.full(dfao.n_states, -1, dtype=np.int64)
    index[reach] = np.arange(K)
    M = np.zeros((K, K))
    for edges in (dfao.edge0, dfao.edge1):
        np.add.at(M, (np.arange(K), index[edges[reach]]), 1.0)
    A = M / 2.0
    S, _ = _geometric_sum(A, T)
    G = S / (T + 1)
    max_dev = float(np.abs(G - 1.0 / K).max())
    commute_dev = float(
        max(np.abs(A @ G - G).max(), np.abs(G @ A - G).max())
    )
    stats = {"K": K, "T": T, "tol": tol, "max_dev": max_dev, "commute_dev": commute_dev}
    if max_dev <= tol and commute_dev <= tol:
        return pass_report(claim, domain, **stats)
    return fail_report(claim, domain, {"max_dev": max_dev}, **stats)


def density_counts_dfao(dfao: Dfao, imax: int) -> list[Fraction]:
    """d_{2^i, p} for 0 <= i <= imax by exact integer path counting: the
    number of length-i paths from the initial state into {beta = 0},
    divided by 2^i."""
    e0 = dfao.edge0.tolist()
    e1 = dfao.edge1.tolist()
    counts = [0] * dfao.n_states
    counts[dfao.initial] = 1
    zero_states = range(0, dfao.n_states, dfao.p)  # states with beta == 0
    out = []
    for i in range(imax + 1):
        if i:
            nxt = [0] * dfao.n_states
            for s, c in enumerate(counts):
                if c:
                    nxt[e0[s]] += c
                    nxt[e1[s]] += c
            counts = nxt
        out.append(Fraction(sum(counts[s] for s in zero_states), 1 << i))
    return out


def density_cesaro_averages(densities: list[Fraction]) -> dict[str, Fraction]:
    """Running average of d_{2^0..2^n} in both conventions: the plain mean,
    and the variant with an extra leading zero term in the sum."""
    total = sum(densities, Fraction(0))
    n_plus_1 = len(densities)
    return {
        "mean": total / n_plus_1,
        "mean_with_zero_term": total / (n_plus_1 + 1),
    }


def periodicity_search(
    dfao: Dfao, max_preperiod: int, max_period: int, prefix_len: int
) -> VerificationReport:
    """Exhaustively rule out eventual periodicity inside the searched box.

    For every period q <= max_period there must be an index n with
    max_preperiod < n <= prefix_len - q and output(n) != output(n+q);
    that single witness covers every preperiod u <= max_preperiod.
    """
    if prefix_len < max_preperiod + 2 * max_period:
        raise ValueError("prefix too short for the requested box")
    claim = f"no-eventual-period(p={dfao.p},t={dfao.target})"
    domain = (
        f"preperiod <= {max_preperiod}, period <= {max_period}, "
        f"prefix {prefix_len}"
    )
    seq = output_range(dfao, prefix_len)
    lo = max_preperiod + 1
    unbroken = []
    for q in range(1, max_period + 1):
        if not np.any(seq[lo: prefix_len - q] != seq[lo + q: prefix_len]):
            unbroken.append(q)
    if unbroken:
        return fail_report(
            claim,
            domain,
            {"period": unbroken[0], "preperiod": max_preperiod},
            unbroken_periods=len(unbroken),
        )
    return pass_report(claim, domain, periods_checked=max_period)


def export_dot(dfao: Dfao, *, analysis: DfaoAnalysis | None = None) -> str:
    """Reachable subgraph in DOT format, deterministically ordered.

    Zero-output states are drawn as double circles; edges carry their bit
    labels.
    """
    if analysis is None:
        analysis = analyze(dfao)
    lines = ["digraph dfao {", "  rankdir=LR;"]
    for s in analysis.reachable:
        a, b = dfao.label(s)
        shape = "doublecircle" if b == 0 else "circle"
        style = ', style=bold' if s == dfao.initial else ""
        lines.append(f'  s{s} [label="({a},{b})", shape={shape}{style}];')
    for s in analysis.reachable:
        lines.append(f'  s{s} -> s{int(dfao.edge0[s])} [label="0"];')
        lines.append(f'  s{s} -> s{int(dfao.edge1[s])} [label="1"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def verify_aperiodicity_witness(m_lo: int = 4, m_hi: int = 20) -> VerificationReport:
    """B_{15 + 5*2^m}(-1/2) equals -5/32 for every m in [m_lo, m_hi];
    a nonzero constant along this family breaks any eventual period of the
    mod-p reductions at -1/2."""
    claim = "shifted-family-constant-value"
    domain = f"{m_lo} <= m <= {m_hi}"
    expected = Fraction(-5, 32)
    for m in range(m_lo, m_hi + 1):
        value = eval_exact(15 + 5 * 2**m, Fraction(-1, 2))
        if value != expected:
            return fail_report(claim, domain, {"m": m, "value": value})
    return pass_report(claim, domain, family_size=m_hi - m_lo + 1)
