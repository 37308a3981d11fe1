"""High-precision numeric evaluation backed by mpmath.

Exact objects stay exact everywhere else in the package; this module is the
only place floats are produced.  Every evaluation runs with guard bits and is
rounded back to the requested precision, so doubling the precision changes a
result only far below the target accuracy.
"""

from __future__ import annotations

import re
from fractions import Fraction

import mpmath
from mpmath import mp

from .errors import UnsupportedSymbolError
from .scalars import ConstElem

DEFAULT_PRECISION = 256
_GUARD_BITS = 16

_LOG_RE = re.compile(r"^log(\d+)$")


def to_mpf(q, precision: int = DEFAULT_PRECISION):
    """Fraction/int -> mpf at the given binary precision."""
    q = Fraction(q)
    with mp.workprec(precision + _GUARD_BITS):
        val = mpmath.mpf(q.numerator) / mpmath.mpf(q.denominator)
    return _round_to(val, precision)


def _round_to(x, precision: int):
    with mp.workprec(precision):
        return +x


def _eval_symbol(name: str, exponent: int):
    if name == "sqrt6":
        base = mpmath.sqrt(6)
    elif name == "sqrt3":
        base = mpmath.sqrt(3)
    elif name == "invsqrtpi":
        base = 1 / mpmath.sqrt(mpmath.pi)
    elif name == "pisq":
        base = mpmath.pi ** 2
    elif name == "zeta3":
        base = mpmath.zeta(3)
    else:
        m = _LOG_RE.match(name)
        if m:
            base = mpmath.log(int(m.group(1)))
        else:
            raise UnsupportedSymbolError(f"no numeric rule for symbol {name!r}")
    return base ** exponent


def const_eval(value, precision: int = DEFAULT_PRECISION):
    """Evaluate a ConstElem (or rational) to an mpf at `precision` bits."""
    if precision < 64:
        raise ValueError("precision must be at least 64 bits")
    if not isinstance(value, ConstElem):
        return to_mpf(value, precision)
    with mp.workprec(precision + _GUARD_BITS):
        total = mpmath.mpf(0)
        for mono, coeff in value.terms.items():
            term = mpmath.mpf(coeff.numerator) / mpmath.mpf(coeff.denominator)
            for sym, e in mono:
                term *= _eval_symbol(sym, e)
            total += term
    return _round_to(total, precision)


def map_count_limit(precision: int = DEFAULT_PRECISION):
    """The limiting constant of the normalized map-count ratios,
    sqrt(3/5) * Gamma(1/5)*Gamma(4/5) / (4*pi^2).

    Gamma(1/5)*Gamma(4/5) is reduced through the reflection identity
    Gamma(x)Gamma(1-x) = pi/sin(pi x), so only pi and sin are needed.
    """
    with mp.workprec(precision + _GUARD_BITS):
        val = mpmath.sqrt(mpmath.mpf(3) / 5) / (4 * mpmath.pi * mpmath.sin(mpmath.pi / 5))
    return _round_to(val, precision)


def stokes_reference(precision: int = DEFAULT_PRECISION):
    """Closed form of the Stokes parameter, -3^(1/4) / (2*sqrt(pi))."""
    with mp.workprec(precision + _GUARD_BITS):
        val = -mpmath.power(3, mpmath.mpf(1) / 4) / (2 * mpmath.sqrt(mpmath.pi))
    return _round_to(val, precision)


def gamma_mpf(x, precision: int = DEFAULT_PRECISION):
    with mp.workprec(precision + _GUARD_BITS):
        val = mpmath.gamma(to_mpf(Fraction(x), precision + _GUARD_BITS))
    return _round_to(val, precision)


def format_float(x, precision: int) -> str:
    """Deterministic decimal rendering with digits matched to the precision."""
    digits = max(int(precision * 0.30103) - 2, 8)
    return mpmath.nstr(x, digits, strip_zeros=False)
