from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from csfree.errors import UnsupportedSymbolError
from csfree.numeric import (const_eval, format_float, map_count_limit,
                            stokes_reference, to_mpf)
from csfree.scalars import ConstElem, sqrt3, sqrt6, sqrt_pi


def test_rational_eval():
    assert const_eval(Fraction(1), 64) == 1
    assert const_eval(ConstElem.rational(Fraction(-3, 4)), 128) == mpmath.mpf("-0.75")


def test_map_count_limit_matches_printed_digits():
    # 20 printed digits of the closed form
    printed = mpmath.mpf("0.10486898772254091800")
    with mp.workprec(80):
        assert abs(map_count_limit(256) - printed) < mpmath.mpf(10) ** -19


def test_stokes_reference_value():
    with mp.workprec(120):
        direct = -mpmath.power(3, mpmath.mpf(1) / 4) / (2 * mpmath.sqrt(mpmath.pi))
        assert abs(stokes_reference(256) - direct) < mpmath.mpf(10) ** -30
    assert format_float(stokes_reference(64), 64).startswith("-0.371257")


def test_symbol_evaluations_consistent():
    # sqrt6*sqrt3 evaluates like sqrt(18)
    with mp.workprec(100):
        v = const_eval(sqrt6() * sqrt3(), 256)
        assert abs(v - mpmath.sqrt(18)) < mpmath.mpf(10) ** -28
        w = const_eval(ConstElem.symbol("log3"), 256)
        assert abs(w - mpmath.log(3)) < mpmath.mpf(10) ** -28


def test_precision_doubling_stability():
    messy = (sqrt6(Fraction(22, 7)) + sqrt_pi(-3) * Fraction(5, 13)
             + ConstElem.symbol("zeta3", 2, Fraction(-1, 3))
             + ConstElem.symbol("log2", 1, Fraction(9, 11)))
    for p in (64, 128, 256):
        lo = const_eval(messy, p)
        hi = const_eval(messy, 2 * p)
        with mp.workprec(4 * p):
            assert abs(lo - hi) / abs(hi) < mpmath.mpf(2) ** -(p - 8)


def test_unsupported_symbol():
    with pytest.raises(UnsupportedSymbolError):
        const_eval(ConstElem.symbol("logneg"), 128)


def test_precision_floor():
    with pytest.raises(ValueError):
        const_eval(ConstElem.rational(1), 32)


def test_to_mpf_exact_dyadics():
    assert to_mpf(Fraction(3, 8), 64) == mpmath.mpf("0.375")
