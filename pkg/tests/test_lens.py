from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from csfree.lens import (LensSpace, casson_invariant, dedekind_sum,
                         free_energy_genus, free_energy_table, gevrey_estimate,
                         sln_specialization_residual)


def test_lens_space_validation():
    LensSpace(1, 0)
    LensSpace(5, 2)
    with pytest.raises(ValueError):
        LensSpace(4, 2)
    with pytest.raises(ValueError):
        LensSpace(3, 3)
    with pytest.raises(ValueError):
        LensSpace(1, 1)
    with pytest.raises(ValueError):
        LensSpace(0, 0)


def test_dedekind_examples():
    assert dedekind_sum(7, 1) == 0
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)


@settings(max_examples=60)
@given(st.integers(1, 40), st.integers(1, 40))
def test_dedekind_reciprocity(b, d):
    # independent oracle: s(b,d) + s(d,b) = -1/4 + (b/d + d/b + 1/(bd))/12
    if gcd(b, d) != 1:
        return
    lhs = dedekind_sum(b, d) + dedekind_sum(d, b)
    rhs = Fraction(-1, 4) + (Fraction(b, d) + Fraction(d, b)
                             + Fraction(1, b * d)) / 12
    assert lhs == rhs


def test_casson_examples():
    assert casson_invariant(LensSpace(1, 0)) == 0
    assert casson_invariant(LensSpace(2, 1)) == 0
    assert casson_invariant(LensSpace(3, 1)) == Fraction(-1, 36)
    assert casson_invariant(LensSpace(3, 1), "s/2") == Fraction(1, 36)


def test_sphere_free_energy_vanishes():
    sphere = LensSpace(1, 0)
    for g in range(5):
        assert free_energy_genus(sphere, g, 16).is_zero()


def test_l21_genus0_leading_coefficient():
    series = free_energy_genus(LensSpace(2, 1), 0, 10)
    assert series.coeff(4) == Fraction(-1, 384)
    assert series.coeff(3) == 0  # lambda vanishes for L(2,1)


def test_cross_route_equality():
    for d, b in ((2, 1), (3, 1), (3, 2), (5, 2)):
        space = LensSpace(d, b)
        for g in range(2, 7):
            assert free_energy_genus(space, g, 24) \
                == free_energy_genus(space, g, 24, route="closed"), (d, b, g)


def test_parity_after_removing_casson_term():
    space = LensSpace(3, 2)
    for g in range(4):
        series = free_energy_genus(space, g, 17)
        lam = casson_invariant(space)
        for k in range(1, 17, 2):
            expected = lam / 2 if (g, k) == (0, 3) else (
                -lam / 2 if (g, k) == (1, 1) else 0)
            assert series.coeff(k) == expected, (g, k)


def test_table_entries():
    sphere_table = free_energy_table(LensSpace(1, 0), 4, 8)
    assert all(v == 0 for v in sphere_table.entries.values())

    table = free_energy_table(LensSpace(2, 1), 4, 8)
    assert table.coefficient(0, 4) == Fraction(-1, 384)
    # admissibility: no entries at 2g - 2 + d' <= 0 or d' <= 0
    assert (0, 2) not in table.entries
    assert (1, 1) in table.entries
    assert all(2 * g - 2 + dp > 0 and dp > 0 for (g, dp) in table.entries)

    l31 = free_energy_table(LensSpace(3, 1), 2, 4)
    # genus-1 linear coefficient is -lambda/2 by evenness of the genus series
    assert l31.coefficient(1, 1) == -casson_invariant(LensSpace(3, 1)) / 2


def test_table_serialization():
    table = free_energy_table(LensSpace(3, 1), 2, 4)
    data = table.to_json()
    assert data["schema"].startswith("csfree/lens-table/")
    assert data["d"] == 3 and data["lambda"] == "-1/36"
    assert {"g": 0, "d": 4, "coeff": data["entries"][0]["coeff"]} == data["entries"][0]
    csv_text = table.to_csv()
    assert csv_text.splitlines()[0] == "g,d,coeff"


def test_sln_residual_zero():
    for d, b in ((2, 1), (3, 1)):
        space = LensSpace(d, b)
        for rank in (1, 2, 3):
            assert sln_specialization_residual(space, rank, 10).is_zero(), (d, b, rank)


def test_sln_residual_convention_invariant():
    space = LensSpace(5, 2)
    for convention in ("-s/2", "s/2"):
        res = sln_specialization_residual(space, 3, 8, convention=convention)
        assert res.is_zero(), convention


def test_rank_one_collapse_is_nontrivial():
    # the all-genus cancellation happens even though individual genera are nonzero
    space = LensSpace(3, 1)
    assert not free_energy_genus(space, 0, 8).is_zero()
    assert sln_specialization_residual(space, 1, 10).is_zero()


def test_gevrey_sphere_is_zero():
    report = gevrey_estimate(LensSpace(1, 0), 4, 4)
    assert report.c_min == 0


def test_gevrey_trend():
    report = gevrey_estimate(LensSpace(2, 1), 6, 6, precision=128)
    assert report.c_min > 0
    assert report.non_increasing_beyond_3
    assert report.attained_at is not None


def test_gevrey_scaling_sanity():
    # doubling the base of every entry scales C_min by exactly 2: check on the
    # definition by comparing against a hand-built scan of the scaled table
    import mpmath
    from csfree.lens import free_energy_table
    from csfree.numeric import to_mpf
    from math import factorial

    table = free_energy_table(LensSpace(2, 1), 5, 5)
    def c_min(scale_pow):
        best = mpmath.mpf(0)
        for (g, dp), v in table.entries.items():
            if not v:
                continue
            scaled = abs(v) * Fraction(2) ** ((g + dp) * scale_pow)
            c = (to_mpf(scaled, 128) / to_mpf(factorial(2 * g), 128)) \
                ** (mpmath.mpf(1) / (g + dp))
            best = max(best, c)
        return best

    with mpmath.mp.workprec(128):
        assert abs(c_min(1) / c_min(0) - 2) < mpmath.mpf(10) ** -25


def test_gevrey_bounds_validation():
    with pytest.raises(ValueError):
        gevrey_estimate(LensSpace(2, 1), 1, 5)
