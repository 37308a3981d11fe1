"""Polylogarithm machinery on the formal disk.

Negative-order polylogarithms are exact rational functions
``Li_a(x) = P_a(x) / (1-x)^(1-a)``; substituting ``x = e^t`` and dividing
exactly gives their Laurent expansions at ``t = 0``.  On top of these sit the
log-sinh series ``f`` and the genus-indexed auxiliary series ``F_g`` that the
lens-space free energy is assembled from, each computable two ways: from the
modified Bernoulli coefficients directly, or from a polylogarithm closed form
whose pole must cancel exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .bernoulli import bernoulli, modified_bernoulli
from .errors import ConsistencyError
from .scalars import ConstElem, PI_SQUARED, ZETA3
from .series import TruncSeries

#: formal marker for log(-t) in symbolic expansions; has no numeric rule
LOG_NEG_ARG = "logneg"


@dataclass(frozen=True)
class RationalPolylog:
    """Li_a(x) for a <= 0 as numerator polynomial over (1-x)^pole_order."""

    numerator: tuple  # integer coefficients, ascending powers of x
    pole_order: int

    def taylor(self, order: int) -> TruncSeries:
        """Taylor expansion at x = 0, for cross-checks against sum n^(-a) x^n."""
        one_minus_x = TruncSeries.from_terms({0: 1, 1: -1}, order)
        num = TruncSeries.from_terms(
            {k: c for k, c in enumerate(self.numerator)}, order)
        return num / one_minus_x.pow_int(self.pole_order)


def polylog_rational(alpha: int) -> RationalPolylog:
    """Rational-function form of Li_alpha for alpha <= 0.

    Built by repeated application of x*d/dx starting from Li_0 = x/(1-x):
    if Li_a = P/(1-x)^(1-a) then P_{a-1} = x*(P'(x)(1-x) + (1-a)P(x)).
    """
    if alpha > 0:
        raise ValueError(f"rational polylog needs alpha <= 0, got {alpha}")
    poly = [0, 1]  # x
    a = 0
    while a > alpha:
        deriv = [(i + 1) * c for i, c in enumerate(poly[1:])]
        nxt = [0] * (len(poly) + 1)
        for i, c in enumerate(deriv):
            nxt[i] += c
            nxt[i + 1] -= c
        for i, c in enumerate(poly):
            nxt[i] += (1 - a) * c
        poly = [0] + nxt
        while poly and poly[-1] == 0:
            poly.pop()
        a -= 1
    return RationalPolylog(tuple(poly), 1 - alpha)


def polylog_exp_expansion(alpha: int, order: int) -> TruncSeries:
    """Exact Laurent expansion of Li_alpha(e^t) at t = 0 for alpha <= 0.

    The valuation is -(1-alpha); the pole comes entirely from the factor
    (1 - e^t)^(1-alpha).
    """
    if alpha > 0:
        raise ValueError(f"exponential polylog expansion needs alpha <= 0, got {alpha}")
    rep = polylog_rational(alpha)
    m = rep.pole_order
    if order <= 1 - m:
        raise ValueError(f"order must exceed the pole valuation {-m}")
    work = order + m + 1
    e_t = TruncSeries.exp_x(work)
    num = e_t.compose_poly(rep.numerator)
    den = (TruncSeries.one(work) - e_t).pow_int(m)
    return (num / den).truncate(order)


def f_series(order: int, route: str = "coeff") -> TruncSeries:
    """Taylor series of log(sinh(x/2)/(x/2)).

    route="coeff" fills in the modified Bernoulli coefficients; route="log"
    computes log of the sinh quotient with series operations.  The two must
    agree exactly.
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    if route == "coeff":
        terms = {2 * k: modified_bernoulli(2 * k) for k in range(1, (order + 1) // 2)}
        return TruncSeries.from_terms(terms, order)
    if route == "log":
        quotient = TruncSeries.from_terms(
            {2 * k: Fraction(1, 4 ** k * factorial(2 * k + 1))
             for k in range((order + 1) // 2)},
            order)
        return quotient.log()
    raise ValueError(f"unknown route {route!r}")


def f_aux_series(g: int, order: int) -> TruncSeries:
    """The genus-g auxiliary series: sum over l of
    (2l+2g)!/(2l+2)! * b_{2g+2l} * t^(2l+2), starting at l=1 when g=0."""
    if g < 0:
        raise ValueError("genus must be >= 0")
    if order < 4:
        raise ValueError("order must be at least 4")
    terms = {}
    l = 1 if g == 0 else 0
    while 2 * l + 2 < order:
        c = Fraction(factorial(2 * l + 2 * g), factorial(2 * l + 2))
        terms[2 * l + 2] = c * modified_bernoulli(2 * g + 2 * l)
        l += 1
    return TruncSeries.from_terms(terms, order)


def f_aux_closed(g: int, order: int) -> TruncSeries:
    """Closed-form route to the genus-g auxiliary series, g >= 1.

    For g >= 2 this is -Li_{3-2g}(e^t) + (2g-3)! t^(2-2g) - B_{2g-2}/(2g-2);
    the polylogarithm pole must cancel exactly against the monomial, and the
    constant against the Bernoulli term.  For g = 1 it is
    log((e^t - 1)/t) - t/2.
    """
    if g < 1:
        raise ValueError("closed form implemented for genus >= 1")
    if g == 1:
        e_t = TruncSeries.exp_x(order + 1)
        quotient = (e_t - TruncSeries.one(order + 1)).shift(-1)
        return quotient.log() - TruncSeries.monomial(Fraction(1, 2), 1, order)
    out = (-polylog_exp_expansion(3 - 2 * g, order)
           + TruncSeries.monomial(factorial(2 * g - 3), 2 - 2 * g, order)
           - TruncSeries.monomial(bernoulli(2 * g - 2) / (2 * g - 2), 0, order))
    for k in range(out.valuation, min(2, out.order)):
        if out.coeff(k):
            raise ConsistencyError(
                f"residual term {out.coeff(k)}*t^{k} after pole cancellation (g={g})")
    return out


def trilog_exp_symbolic(order: int) -> TruncSeries:
    """Li_3(e^t) over the symbolic-constant ring.

    Coefficients: zeta(3), then pi^2/6, then (3/2 - log(-t))/2 at t^2 (the
    log carried as the formal symbol LOG_NEG_ARG), then zeta(3-k)/k! which is
    rational for k >= 3.
    """
    terms: dict[int, object] = {
        0: ConstElem.symbol(ZETA3),
        1: ConstElem.symbol(PI_SQUARED) * Fraction(1, 6),
        2: ConstElem.rational(Fraction(3, 4))
           - ConstElem.symbol(LOG_NEG_ARG) * Fraction(1, 2),
    }
    for k in range(3, order):
        zeta_val = Fraction(-1, 2) if k == 3 else -bernoulli(k - 2) / (k - 2)
        if zeta_val:
            terms[k] = ConstElem.rational(zeta_val / factorial(k))
    return TruncSeries.from_terms(terms, order)


def genus0_closed_form(order: int, linear_term_sign: int = 1) -> TruncSeries:
    """Closed-form route to the genus-0 auxiliary series, over ConstElem.

    Returns -Li_3(e^t) plus the bracket
    -t^2/2*log(-t) - t^3/12 + 3t^2/4 + pi^2 t/6 + zeta(3); the symbolic
    constants and the log marker must all cancel, leaving the rational series
    with fourth-order leading term.  Only linear_term_sign=+1 cancels the
    linear term: the coefficient series has no t^1 term, which forces the sign
    of the pi^2 t/6 correction.
    """
    bracket = TruncSeries.from_terms(
        {
            2: ConstElem.rational(Fraction(3, 4))
               - ConstElem.symbol(LOG_NEG_ARG) * Fraction(1, 2),
            3: ConstElem.rational(Fraction(-1, 12)),
            1: ConstElem.symbol(PI_SQUARED) * Fraction(linear_term_sign, 6),
            0: ConstElem.symbol(ZETA3),
        },
        order)
    return -trilog_exp_symbolic(order) + bracket
