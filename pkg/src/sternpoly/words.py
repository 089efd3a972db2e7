"""Binary words with leading-zero tolerance, and the closed-form integer
families whose bit patterns drive the equal-degree and palindrome analyses.
"""

from __future__ import annotations

__all__ = [
    "to_bits",
    "from_bits",
    "power_concat",
    "p_val",
    "q_val",
    "u_val",
    "v_val",
    "u_word",
    "v_word",
    "family_value",
]


def _check_word(word: str) -> str:
    if any(c not in "01" for c in word):
        raise ValueError(f"not a binary word: {word!r}")
    return word


def to_bits(n: int) -> str:
    """Canonical binary word of n; to_bits(0) is the single bit '0'."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return format(n, "b")


def from_bits(word: str) -> int:
    """Value of a binary word; leading zeros are ignored, '' maps to 0."""
    _check_word(word)
    return int(word, 2) if word else 0


def power_concat(word: str, k: int) -> str:
    """k concatenated copies of word; k = 0 gives the empty word."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return _check_word(word) * k


def p_val(k: int) -> int:
    """(4^k - 1)/3; for k >= 1 its binary word is '1' + '01'*(k-1)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return (4**k - 1) // 3


def q_val(k: int) -> int:
    """(5*4^k - 2)/3; for k >= 1 its binary word is '1' + '10'*k."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return (5 * 4**k - 2) // 3


def u_val(n: int) -> int:
    """u_0 = 1, u_n = 2^(8n-2)*u_{n-1} + 2^(4n) - 1; bit length 4n^2+2n+1."""
    if n < 0:
        raise ValueError("n must be non-negative")
    u = 1
    for i in range(1, n + 1):
        u = (u << (8 * i - 2)) + (1 << (4 * i)) - 1
    return u


def v_val(n: int) -> int:
    """v_0 = 5, v_n = 2^(8n+2)*v_{n-1} - 2^(4n+2) + 1; bit length 4n^2+6n+3."""
    if n < 0:
        raise ValueError("n must be non-negative")
    v = 5
    for i in range(1, n + 1):
        v = (v << (8 * i + 2)) - (1 << (4 * i + 2)) + 1
    return v


def u_word(n: int) -> str:
    """The run-length pattern 1 0^2 1^4 0^6 ... 1^(4n) equal to bin(u_n)."""
    word = "1"
    bit, run = "0", 2
    while run <= 4 * n:
        word += bit * run
        bit = "1" if bit == "0" else "0"
        run += 2
    return word


def v_word(n: int) -> str:
    """The run-length pattern 1 0^2 1^4 ... 1^(4n) 0^(4n+1) 1 equal to bin(v_n)."""
    return u_word(n) + "0" * (4 * n + 1) + "1"


_FAMILIES = {"P": p_val, "Q": q_val, "U": u_val, "V": v_val}


def family_value(family: str, index: int) -> int:
    """Dispatch to one of the four closed-form families by letter."""
    try:
        fn = _FAMILIES[family.upper()]
    except KeyError:
        raise ValueError(f"unknown family {family!r}") from None
    return fn(index)
