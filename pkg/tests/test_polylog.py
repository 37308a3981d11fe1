from fractions import Fraction
from math import factorial

import pytest

from csfree.bernoulli import bernoulli, modified_bernoulli
from csfree.errors import ConsistencyError
from csfree.polylog import (LOG_NEG_ARG, f_aux_closed, f_aux_series, f_series,
                            genus0_closed_form, polylog_exp_expansion,
                            polylog_rational, trilog_exp_symbolic)
from csfree.scalars import ConstElem
from csfree.series import TruncSeries


def power_sum_oracle(alpha, order):
    """Independent Taylor oracle: Li_alpha(x) = sum_{n>=1} n^(-alpha) x^n."""
    return TruncSeries.from_terms(
        {n: Fraction(n ** (-alpha)) for n in range(1, order)}, order)


def bernoulli_gf_oracle(order):
    """Independent oracle for Li_0(e^t) = -1 - 1/(e^t - 1) via the Bernoulli
    generating function: coefficient of t^k is -B_{k+1}/(k+1)! for k >= 1."""
    terms = {-1: Fraction(-1), 0: Fraction(-1) - bernoulli(1)}
    for k in range(1, order):
        terms[k] = -bernoulli(k + 1) / factorial(k + 1)
    return TruncSeries.from_terms(terms, order)


def test_rational_form_examples():
    assert polylog_rational(0).numerator == (0, 1)
    assert polylog_rational(0).pole_order == 1
    assert polylog_rational(-1).numerator == (0, 1)
    assert polylog_rational(-1).pole_order == 2
    assert polylog_rational(-2).numerator == (0, 1, 1)
    assert polylog_rational(-2).pole_order == 3


def test_rational_form_against_power_sum():
    for alpha in range(0, -6, -1):
        rep = polylog_rational(alpha)
        assert rep.taylor(20) == power_sum_oracle(alpha, 20), alpha


def test_rational_form_rejects_positive():
    with pytest.raises(ValueError):
        polylog_rational(1)
    with pytest.raises(ValueError):
        polylog_exp_expansion(1, 10)


def test_exp_expansion_alpha0_oracle():
    got = polylog_exp_expansion(0, 12)
    assert got.agrees_with(bernoulli_gf_oracle(12))
    assert got.valuation == -1
    assert got.coeff(0) == Fraction(-1, 2)
    assert got.coeff(1) == Fraction(-1, 12)
    assert got.coeff(3) == Fraction(1, 720)


def test_exp_expansion_alpha_minus1():
    got = polylog_exp_expansion(-1, 12)
    # derivative of the alpha = 0 oracle
    assert got.agrees_with(bernoulli_gf_oracle(13).derivative())
    assert got.valuation == -2
    assert got.coeff(0) == Fraction(-1, 12)
    assert got.coeff(2) == Fraction(1, 240)


def test_exp_expansion_derivative_chain():
    for alpha in (0, -1, -2, -3):
        upper = polylog_exp_expansion(alpha, 14)
        lower = polylog_exp_expansion(alpha - 1, 14)
        assert upper.derivative().agrees_with(lower), alpha


def test_exp_expansion_parity():
    # Li_{-n}(e^-t) = (-1)^(n+1) Li_{-n}(e^t)
    for alpha in (-1, -2, -3, -4):
        s = polylog_exp_expansion(alpha, 13)
        sign = (-1) ** (-alpha + 1)
        flipped = s.rescale(-1).scale(sign)
        assert flipped == s, alpha


def test_f_series_printed_expansion():
    f = f_series(8)
    assert f == TruncSeries.from_terms(
        {2: Fraction(1, 24), 4: Fraction(-1, 2880), 6: Fraction(1, 181440)}, 8)


def test_f_series_two_routes_agree():
    assert f_series(30, route="coeff") == f_series(30, route="log")


def test_f_series_coefficients_are_modified_bernoulli():
    f = f_series(22)
    for k in range(1, 11):
        assert f.coeff(2 * k) == modified_bernoulli(2 * k)


def test_f_aux_genus1_is_f():
    assert f_aux_series(1, 20) == f_series(20)


def test_f_aux_genus0_leading():
    assert f_aux_series(0, 10).coeff(4) == Fraction(1, 288)
    assert f_aux_series(0, 10).valuation == 4


def test_f_aux_genus2_from_second_derivative():
    # F_2 = F_1'' - 2! b_2
    lhs = f_aux_series(2, 18)
    rhs = f_aux_series(1, 20).derivative().derivative() \
        - TruncSeries.monomial(2 * modified_bernoulli(2), 0, 18)
    assert lhs == rhs


def test_f_aux_genus0_second_derivative_is_f():
    # the genus-0 series integrates f twice (up to a linear function)
    assert f_aux_series(0, 22).derivative().derivative() == f_series(20)


def test_closed_equals_series_all_genera():
    for g in range(2, 9):
        assert f_aux_closed(g, 30) == f_aux_series(g, 30), g


def test_closed_genus1_is_f():
    assert f_aux_closed(1, 24) == f_series(24)


def test_closed_genus3_constant_cancellation():
    # constant term of -Li_{-3}(e^t) + 3! t^-4 equals B_4/4 = -1/120,
    # offset exactly by the -B_4/4 subtraction
    combo = -polylog_exp_expansion(-3, 8) + TruncSeries.monomial(6, -4, 8)
    assert combo.coeff(0) == bernoulli(4) / 4 == Fraction(-1, 120)
    assert f_aux_closed(3, 8).coeff(0) == 0


def test_closed_rejects_genus0():
    with pytest.raises(ValueError):
        f_aux_closed(0, 10)


def test_genus0_symbolic_structure():
    got = genus0_closed_form(12)
    for k in range(-1, 4):
        assert got.coeff(k) == 0, (k, got.coeff(k))
    assert got.coeff(4) == ConstElem.rational(Fraction(1, 288))
    rationalized = got.map_coeffs(
        lambda c: c.as_fraction() if isinstance(c, ConstElem) else c)
    assert rationalized.agrees_with(f_aux_series(0, 12))


def test_genus0_linear_sign_is_forced():
    # with the flipped sign the linear term survives as -pi^2/3
    wrong = genus0_closed_form(8, linear_term_sign=-1)
    linear = wrong.coeff(1)
    assert linear != 0
    assert linear.coeff_of(("pisq", 1)) == Fraction(-1, 3)


def test_trilog_symbolic_log_marker():
    s = trilog_exp_symbolic(6)
    assert s.coeff(2).coeff_of((LOG_NEG_ARG, 1)) == Fraction(-1, 2)


def test_pole_cancellation_guard():
    # a wrong constant would leave a residue below t^2
    bad = -polylog_exp_expansion(-1, 8) + TruncSeries.monomial(1, -2, 8)
    assert bad.coeff(0) != 0  # this is what f_aux_closed must cancel
    f_aux_closed(2, 8)  # and it does, without raising


def test_order_preconditions():
    with pytest.raises(ValueError):
        f_series(1)
    with pytest.raises(ValueError):
        f_aux_series(0, 3)
    with pytest.raises(ValueError):
        polylog_exp_expansion(0, -2)
