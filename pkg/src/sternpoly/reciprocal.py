"""Palindromic (reciprocal) Stern polynomials.

B_n is reciprocal when its coefficient vector, low-order zeros included,
reads the same in both directions.  Two recursively defined index
families u_m and v_m make every B_{2^k - u_m} and B_{2^k - v_m}
reciprocal once k reaches the bit length of the subtracted value; the
census tooling counts all reciprocal indices below a bound and how many
of them the two families explain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tables
from .core import degree, stern_pair
from .report import VerificationReport, fail_report, pass_report
from .words import u_val, v_val

__all__ = [
    "is_reciprocal",
    "u_min_exponent",
    "v_min_exponent",
    "verify_reciprocal_families",
    "reciprocal_mask",
    "family_pairs",
    "RecCensus",
    "rec_census",
]


def is_reciprocal(n: int) -> bool:
    """Is the coefficient vector of B_n a palindrome?"""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = stern_pair(n)[0].coeffs
    return coeffs == coeffs[::-1]


def u_min_exponent(m: int) -> int:
    """Smallest k with 2^k > u_m: the bit length 4m^2 + 2m + 1."""
    return 4 * m * m + 2 * m + 1


def v_min_exponent(m: int) -> int:
    """Smallest k with 2^k > v_m: the bit length 4m^2 + 6m + 3."""
    return 4 * m * m + 6 * m + 3


def verify_reciprocal_families(m_max: int = 3, k_max: int = 80) -> VerificationReport:
    """Every index 2^k - u_m (k from the u threshold) and 2^k - v_m (k from
    the v threshold) yields a palindromic polynomial, with degrees exactly
    k - 2m - 1 and k - 2m - 2; degrees are cross-checked through the
    degree recurrence, independently of the coefficient route."""
    claim = "family-indices-are-reciprocal"
    domain = f"m <= {m_max}, k <= {k_max}"
    checked = 0
    for m in range(m_max + 1):
        for name, value, k_lo, offset in (
            ("u", u_val(m), u_min_exponent(m), 2 * m + 1),
            ("v", v_val(m), v_min_exponent(m), 2 * m + 2),
        ):
            for k in range(k_lo, k_max + 1):
                index = 2**k - value
                poly = stern_pair(index)[0]
                witness = {"family": name, "m": m, "k": k}
                if poly.coeffs != poly.coeffs[::-1]:
                    return fail_report(claim, domain, {**witness, "check": "palindrome"})
                if poly.degree != k - offset:
                    return fail_report(claim, domain, {**witness, "check": "degree"})
                if degree(index) != k - offset:
                    return fail_report(
                        claim, domain, {**witness, "check": "degree-recurrence"}
                    )
                checked += 1
    return pass_report(claim, domain, indices_checked=checked)


def reciprocal_mask(
    n_max: int,
    *,
    P: np.ndarray | None = None,
    e: np.ndarray | None = None,
) -> np.ndarray:
    """Boolean palindrome mask over [0, n_max] (index 0 is False)."""
    if e is None:
        e = tables.degree_table(n_max)
    if P is None:
        P = tables.coeff_table(n_max, e)
    mask = np.zeros(n_max + 1, dtype=bool)
    degs = e[: n_max + 1]
    for d in range(int(degs.max()) + 1):
        rows = np.nonzero(degs == d)[0]
        if rows.size:
            sub = P[rows, : d + 1]
            mask[rows] = (sub == sub[:, ::-1]).all(axis=1)
    return mask


def family_pairs(n_max: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]], set[int]]:
    """All pairs (m, k) with 2^k - u_m (resp. v_m) inside [1, n_max], plus
    the deduplicated set of indices the two families cover."""
    u_pairs: list[tuple[int, int]] = []
    v_pairs: list[tuple[int, int]] = []
    indices: set[int] = set()
    for pairs, value_fn, k_lo_fn in (
        (u_pairs, u_val, u_min_exponent),
        (v_pairs, v_val, v_min_exponent),
    ):
        m = 0
        while True:
            value = value_fn(m)
            k_lo = k_lo_fn(m)
            if 2**k_lo - value > n_max:
                break
            k = k_lo
            while 2**k - value <= n_max:
                pairs.append((m, k))
                indices.add(2**k - value)
                k += 1
            m += 1
    return u_pairs, v_pairs, indices


@dataclass(frozen=True)
class RecCensus:
    """Exhaustive reciprocal count next to the family-explained count."""

    bound: int
    total: int
    family_count: int
    u_pairs: tuple[tuple[int, int], ...]
    v_pairs: tuple[tuple[int, int], ...]
    members: tuple[int, ...] | None = None


def rec_census(
    n_max: int,
    include_members: bool = False,
    *,
    P: np.ndarray | None = None,
    e: np.ndarray | None = None,
) -> RecCensus:
    """Scan [1, n_max] for palindromic coefficient vectors and enumerate the
    family indices landing in range (deduplicated across families)."""
    mask = reciprocal_mask(n_max, P=P, e=e)
    total = int(mask[1:].sum())
    u_pairs, v_pairs, indices = family_pairs(n_max)
    members = tuple(int(i) for i in np.nonzero(mask)[0]) if include_members else None
    return RecCensus(
        n_max, total, len(indices), tuple(u_pairs), tuple(v_pairs), members
    )
