"""Exact arithmetic for the Stern polynomial sequence.

The sequence starts B_0 = 0, B_1 = 1 and satisfies B_{2n}(t) = t*B_n(t),
B_{2n+1}(t) = B_n(t) + B_{n+1}(t).  Coefficients are arbitrary-precision
integers, evaluation points are exact rationals.  Large indices are
handled by descending the bits of n most-significant first while
maintaining the pair (B_n, B_{n+1}), which costs O(log n) polynomial
operations and keeps indices near 2^80 perfectly tractable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "SternPoly",
    "Residue",
    "stern_poly",
    "stern_pair",
    "eval_exact",
    "eval_mod",
    "degree",
    "stern_number",
    "is_prime",
]


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (desk-scale moduli)."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class SternPoly:
    """One Stern polynomial in canonical form.

    ``coeffs[i]`` is the coefficient of t^i; trailing zeros are trimmed,
    so the zero polynomial (index 0) has an empty coefficient tuple.
    """

    index: int
    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def __call__(self, point):
        """Evaluate exactly at an int or Fraction point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc


@dataclass(frozen=True)
class Residue:
    """An element of the prime field F_p."""

    value: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")
        if not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not in [0, {self.modulus})")


def _poly_add(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _bits_msb(n: int) -> str:
    if n < 0:
        raise ValueError("index must be non-negative")
    return format(n, "b") if n else ""


@lru_cache(maxsize=None)
def _coeffs(n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    if n == 1:
        return (1,)
    if n % 2 == 0:
        return (0,) + _coeffs(n // 2)
    h = n // 2
    return _poly_add(_coeffs(h), _coeffs(h + 1))


def stern_poly(n: int) -> SternPoly:
    """B_n by direct recurrence (memoized)."""
    if n < 0:
        raise ValueError("index must be non-negative")
    return SternPoly(n, _coeffs(n))


def stern_pair(n: int) -> tuple[SternPoly, SternPoly]:
    """(B_n, B_{n+1}) by most-significant-first pair descent.

    Reading a 0 bit maps the pair at m to the pair at 2m, reading a 1 bit
    to the pair at 2m+1; both need one shift and one addition.
    """
    a: tuple[int, ...] = ()
    b: tuple[int, ...] = (1,)
    for bit in _bits_msb(n):
        if bit == "1":
            a, b = _poly_add(a, b), (0,) + b
        else:
            a, b = (0,) + a, _poly_add(a, b)
    return SternPoly(n, a), SternPoly(n + 1, b)


def eval_exact(n: int, q: Fraction | int) -> Fraction:
    """B_n(q) as a reduced fraction, by pair descent (no coefficients built)."""
    q = Fraction(q)
    a, b = Fraction(0), Fraction(1)
    for bit in _bits_msb(n):
        if bit == "1":
            a, b = a + b, q * b
        else:
            a, b = q * a, a + b
    return a


def eval_mod(n: int, t: Residue) -> Residue:
    """B_n(t) over F_p by pair descent entirely in the field."""
    p = t.modulus
    a, b = 0, 1
    for bit in _bits_msb(n):
        if bit == "1":
            a, b = (a + b) % p, (t.value * b) % p
        else:
            a, b = (t.value * a) % p, (a + b) % p
    return Residue(a, p)


@lru_cache(maxsize=None)
def degree(n: int) -> int:
    """deg B_n via the degree recurrence; n = 0 is a domain error."""
    if n < 1:
        raise ValueError("degree is defined for n >= 1 only")
    if n < 4:
        return (0, 1, 1)[n - 1]
    if n % 2 == 0:
        return degree(n // 2) + 1
    if n % 4 == 1:
        return degree(n // 4) + 1
    return degree(n // 4 + 1) + 1


def stern_number(n: int) -> int:
    """The diatomic value B_n(1), by integer pair descent."""
    a, b = 0, 1
    for bit in _bits_msb(n):
        if bit == "1":
            a, b = a + b, b
        else:
            a, b = a, a + b
    return a
