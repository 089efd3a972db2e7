import numpy as np
import pytest

from sternpoly import stern_pair, stern_poly
from sternpoly import reciprocal
from sternpoly.words import u_val, v_val


def test_examples():
    assert reciprocal.is_reciprocal(7)
    assert reciprocal.is_reciprocal(11)
    assert not reciprocal.is_reciprocal(2)
    assert not reciprocal.is_reciprocal(5)
    assert reciprocal.is_reciprocal(9)
    with pytest.raises(ValueError):
        reciprocal.is_reciprocal(0)


def test_matches_reversal_definition():
    for n in range(1, 2049):
        coeffs = stern_poly(n).coeffs
        assert reciprocal.is_reciprocal(n) == (coeffs == coeffs[::-1])


def test_mask_small():
    mask = reciprocal.reciprocal_mask(16)
    assert [int(i) for i in np.nonzero(mask)[0]] == [1, 3, 7, 9, 11, 15]


def test_all_ones_family():
    # B_{2^k - 1} = 1 + t + ... + t^(k-1)
    for k in range(1, 30):
        poly = stern_pair(2**k - 1)[0]
        assert poly.coeffs == (1,) * k


def test_thresholds_are_bit_lengths():
    for m in range(5):
        assert reciprocal.u_min_exponent(m) == u_val(m).bit_length()
        assert reciprocal.v_min_exponent(m) == v_val(m).bit_length()


def test_family_verification_small():
    report = reciprocal.verify_reciprocal_families(1, 24)
    assert report.passed, report.witness


def test_family_spot_checks():
    # 2^7 - u_1 = 49 with degree 4; 2^13 - v_1 = 3135 with degree 9
    poly49 = stern_pair(49)[0]
    assert poly49.coeffs == poly49.coeffs[::-1]
    assert poly49.degree == 4
    poly3135 = stern_pair(3135)[0]
    assert poly3135.coeffs == poly3135.coeffs[::-1]
    assert poly3135.degree == 9


def test_family_pairs_enumeration():
    u_pairs, v_pairs, indices = reciprocal.family_pairs(1 << 10)
    # all indices land in range and are reciprocal
    for idx in indices:
        assert 1 <= idx <= 1 << 10
        assert reciprocal.is_reciprocal(idx)
    # 3 = 2^2 - 1 = 2^3 - 5 is covered by both families exactly once
    assert (0, 2) in u_pairs and (0, 3) in v_pairs
    assert len(indices) == len(u_pairs) + len(v_pairs) - 1


def test_census_small():
    census = reciprocal.rec_census(1 << 10, include_members=True)
    assert census.total == len(census.members)
    assert census.total >= census.family_count
    mask = reciprocal.reciprocal_mask(1 << 10)
    assert census.total == int(mask[1:].sum())
    assert set(census.members) >= reciprocal.family_pairs(1 << 10)[2]


def test_census_growth_is_monotone():
    totals = [reciprocal.rec_census(1 << k).total for k in (8, 10, 12)]
    assert totals[0] < totals[1] < totals[2]
