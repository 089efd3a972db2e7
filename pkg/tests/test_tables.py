from fractions import Fraction

import numpy as np
import pytest

from sternpoly import stern_number, stern_poly, eval_exact, degree
from sternpoly import tables


def test_degree_table_matches_recurrence():
    e = tables.degree_table(1 << 12)
    assert e[0] == -1
    for n in range(1, (1 << 12) + 1):
        assert e[n] == degree(n)


def test_diatomic_table_matches_descent():
    s = tables.diatomic_table(4096)
    for n in range(0, 4097, 37):
        assert s[n] == stern_number(n)
    assert list(s[:8]) == [0, 1, 1, 2, 1, 3, 2, 3]


def test_coeff_table_rows():
    P = tables.coeff_table(512)
    for n in range(513):
        coeffs = stern_poly(n).coeffs
        row = P[n]
        assert tuple(int(c) for c in row[: len(coeffs)]) == coeffs
        assert not row[len(coeffs):].any()


def test_point_eval_table():
    for point in (0, -1, 1, 2):
        b = tables.point_eval_table(point, 1024)
        for n in range(0, 1025, 13):
            assert b[n] == stern_poly(n)(point)


def test_scaled_eval_table_zero_detection_and_values():
    for k in (2, 3):
        z = tables.scaled_eval_table(k, 2048)
        point = Fraction(-1, k)
        for n in range(2049):
            value = eval_exact(n, point)
            level = n.bit_length() - 1 if n else 0
            assert Fraction(int(z[n]), k**level) == value
            assert (z[n] == 0) == (value == 0)


def test_scaled_eval_table_overflow_guard():
    # at k = 10^6 headroom is exhausted after a few levels
    with pytest.raises(OverflowError):
        tables.scaled_eval_table(10**6, 1 << 12)


def test_mod_eval_table():
    for p, t in ((5, 2), (7, 3), (11, 7)):
        b = tables.mod_eval_table(p, t, 2048)
        direct = np.array(
            [stern_poly(n)(t) % p for n in range(2049)], dtype=np.int64
        )
        assert (b == direct).all()


def test_zero_prefix_counts():
    values = tables.point_eval_table(0, (1 << 10) - 1)
    counts = tables.zero_prefix_counts(values, 10)
    assert counts[0] == 1
    for i in range(1, 11):
        assert counts[i] == (1 << i) // 2  # even indices
    with pytest.raises(ValueError):
        tables.zero_prefix_counts(values, 11)
