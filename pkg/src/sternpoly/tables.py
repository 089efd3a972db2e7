"""numpy-backed bulk tables for desk-scale sweeps.

All tables are exact integer arithmetic.  Each builder fills the index
range level by level (one level per leading bit), so a table up to n costs
O(n) vectorized work.  The scaled builders check int64 headroom after
every level and refuse to continue rather than wrap.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "degree_table",
    "diatomic_table",
    "coeff_table",
    "point_eval_table",
    "scaled_eval_table",
    "mod_eval_table",
    "zero_prefix_counts",
]

_INT64_MAX = np.iinfo(np.int64).max


def _blocks(n_max: int, start_level: int = 1):
    level = start_level
    while (1 << level) <= n_max:
        yield 1 << level, min(1 << (level + 1), n_max + 1)
        level += 1


def degree_table(n_max: int) -> np.ndarray:
    """deg B_n for 1 <= n <= n_max (index 0 holds the sentinel -1)."""
    e = np.full(n_max + 1, -1, dtype=np.int16)
    for v, d in ((1, 0), (2, 1), (3, 1)):
        if n_max >= v:
            e[v] = d
    for lo, hi in _blocks(n_max, 2):
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        e[even] = e[even >> 1] + 1
        one = n[n % 4 == 1]
        e[one] = e[one >> 2] + 1
        three = n[n % 4 == 3]
        e[three] = e[(three >> 2) + 1] + 1
    return e


def diatomic_table(n_max: int) -> np.ndarray:
    """The integer sequence s_n = B_n(1) via s_{2n} = s_n, s_{2n+1} = s_n + s_{n+1}."""
    s = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        s[1] = 1
    for lo, hi in _blocks(n_max):
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        s[even] = s[even >> 1]
        odd = n[n % 2 == 1]
        src = odd >> 1
        s[odd] = s[src] + s[src + 1]
    return s


def coeff_table(n_max: int, e: np.ndarray | None = None) -> np.ndarray:
    """Coefficient rows of B_0..B_{n_max}; row n, column i is the t^i coefficient."""
    if e is None:
        e = degree_table(n_max)
    # every coefficient is non-negative and bounded by the row sum s_n
    if n_max >= 1 and int(diatomic_table(n_max).max()) >= 2**31:
        raise OverflowError("coefficients exceed int32")
    width = int(e[1:].max()) + 1 if n_max >= 1 else 1
    P = np.zeros((n_max + 1, width), dtype=np.int32)
    if n_max >= 1:
        P[1, 0] = 1
    for lo, hi in _blocks(n_max):
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        P[even, 1:] = P[even >> 1, :-1]
        odd = n[n % 2 == 1]
        src = odd >> 1
        P[odd] = P[src] + P[src + 1]
    return P


def point_eval_table(point: int, n_max: int) -> np.ndarray:
    """Exact values B_n(point) for an integer point, int64 throughout."""
    limit = _INT64_MAX // (abs(int(point)) + 2)
    b = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        b[1] = 1
    for lo, hi in _blocks(n_max):
        if int(np.abs(b[lo >> 1: lo]).max(initial=0)) > limit:
            raise OverflowError("point table exceeds int64 headroom")
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        b[even] = point * b[even >> 1]
        odd = n[n % 2 == 1]
        src = odd >> 1
        b[odd] = b[src] + b[src + 1]
    return b


def scaled_eval_table(k: int, n_max: int) -> np.ndarray:
    """z[n] = k^(bit_length(n) - 1) * B_n(-1/k), an exact integer table.

    z[2n] = -z[n] and z[2n+1] = k*(z[n] + z[n+1]), except that when n+1 is
    a power of two z[n+1] already carries the larger scale, so its factor
    is 1.  In particular z[n] = 0 exactly when B_n(-1/k) = 0.
    """
    if k < 1:
        raise ValueError("k must be positive")
    limit = _INT64_MAX // (2 * k + 2)
    z = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        z[1] = 1
    for lo, hi in _blocks(n_max):
        if int(np.abs(z[lo >> 1: lo]).max(initial=0)) > limit:
            raise OverflowError("scaled table exceeds int64 headroom")
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        z[even] = -z[even >> 1]
        boundary = 2 * lo - 1
        odd = n[(n % 2 == 1) & (n != boundary)]
        src = odd >> 1
        z[odd] = k * (z[src] + z[src + 1])
        if boundary <= n_max:
            m = boundary >> 1
            z[boundary] = k * int(z[m]) + int(z[m + 1])
    return z


def mod_eval_table(p: int, t: int, n_max: int) -> np.ndarray:
    """B_n(t) mod p for all n <= n_max, via the recurrence in F_p."""
    b = np.zeros(n_max + 1, dtype=np.int64)
    if n_max >= 1:
        b[1] = 1
    for lo, hi in _blocks(n_max):
        n = np.arange(lo, hi)
        even = n[n % 2 == 0]
        b[even] = (t * b[even >> 1]) % p
        odd = n[n % 2 == 1]
        src = odd >> 1
        b[odd] = (b[src] + b[src + 1]) % p
    return b


def zero_prefix_counts(values: np.ndarray, imax: int) -> list[int]:
    """Number of zero entries among indices [0, 2^i) for i = 0..imax."""
    if len(values) < (1 << imax):
        raise ValueError("table too short for the requested power")
    count = int(values[0] == 0)
    counts = [count]
    for i in range(1, imax + 1):
        count += int(np.count_nonzero(values[1 << (i - 1): 1 << i] == 0))
        counts.append(count)
    return counts
