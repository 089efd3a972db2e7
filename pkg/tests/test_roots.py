from fractions import Fraction

import pytest

from sternpoly import eval_exact, stern_poly
from sternpoly import roots

HALF = Fraction(-1, 2)
THIRD = Fraction(-1, 3)


def test_membership_examples():
    assert roots.root_membership(6, Fraction(0))
    assert not roots.root_membership(7, Fraction(0))
    assert roots.root_membership(9, Fraction(-1))
    assert roots.root_membership(5, HALF)
    assert roots.root_membership(21, THIRD)
    assert not roots.root_membership(15, HALF)
    # index 0 belongs to every set
    for a in roots.ADMISSIBLE_ROOTS:
        assert roots.root_membership(0, a)


def test_membership_rejects_other_points():
    with pytest.raises(ValueError):
        roots.root_membership(5, Fraction(-1, 4))


def test_members_easy_sets():
    assert roots.r_members(Fraction(0), 7) == [0, 2, 4, 6]
    assert roots.r_members(Fraction(-1), 10) == [0, 3, 6, 9]


def test_members_match_point_membership():
    members = roots.r_members(HALF, 2048)
    expected = [n for n in range(2049) if eval_exact(n, HALF) == 0]
    assert members == expected
    assert roots.r_members(HALF, 50) == [0, 5, 10, 20, 35, 40, 45]
    # first nontrivial member at -1/3 is 21
    assert roots.r_members(THIRD, 21)[1] == 21


def test_scan_small_bounds():
    report = roots.rational_root_scan(11)
    assert report.passed
    assert report.stats["hits"] == {"0": 5, "-1": 3, "-1/2": 2, "-1/3": 0}
    assert roots.rational_root_scan(1).stats["hits"] == {
        "0": 0,
        "-1": 0,
        "-1/2": 0,
        "-1/3": 0,
    }
    report21 = roots.rational_root_scan(21)
    assert report21.stats["hits"]["-1/3"] == 1


def test_scan_agrees_with_factored_roots():
    # every polynomial root found by the scan really vanishes
    report = roots.rational_root_scan(1 << 10)
    assert report.passed
    for n in range(1, (1 << 10) + 1):
        poly = stern_poly(n)
        for a in roots.ADMISSIBLE_ROOTS:
            if poly(a) == 0:
                assert roots.root_membership(n, a)


def test_halfmax_inequality():
    for k in (4, 10):
        assert roots.verify_halfmax_inequality(k, 3000).passed
    with pytest.raises(ValueError):
        roots.verify_halfmax_inequality(3, 10)


def test_closure_small():
    for a in (HALF, THIRD):
        report = roots.verify_closure(a, 1 << 11)
        assert report.passed, report.witness
    report = roots.verify_closure(HALF, 1 << 11)
    assert report.stats["member_count"] == len(roots.r_members(HALF, 1 << 11)) - 1


def test_scaling_identity_examples():
    assert eval_exact(41, HALF) == Fraction(-1, 4)  # 5*2^3 + 1, minus a quarter of B_1
    assert eval_exact(78, HALF) == Fraction(-1, 8)  # 5*2^4 - 2, plus a quarter of B_2
    assert eval_exact(673, THIRD) == Fraction(-1, 27)  # 21*2^5 + 1
    for a in (HALF, THIRD):
        assert roots.verify_scaling(a, 128, 10).passed


def test_density_at_powers_easy_points():
    d0 = roots.density_at_powers(Fraction(0), 10)
    assert d0[0] == 1
    assert all(d == Fraction(1, 2) for d in d0[1:])
    d1 = roots.density_at_powers(Fraction(-1), 10)
    for i, d in enumerate(d1):
        n = 1 << i
        assert d == Fraction((n - 1) // 3 + 1, n)


def test_density_at_powers_decreasing_tail():
    d = roots.density_at_powers(HALF, 14)
    assert d[0] == 1
    assert d[14] < d[8] < d[4]
