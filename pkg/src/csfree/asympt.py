"""Map-count constants, a formal Painleve I solution, and large-order asymptotics.

Everything upstream of the final float comparison is exact: the coefficient
sequences live in Q or in Q adjoined sqrt6/sqrt3/sqrt(pi), the formal solution
and its first trans-series correction are verified by exact residuals, and
floats appear only in the Richardson-accelerated recovery of the limiting
constants.

The grading variable is v = z^(-1/8), so that the formal solution, the
exponential prefactor and the variable itself all have integer v-exponents:
d/dz maps v^k to -(k/8) v^(k+8) and multiplies the exponential factor
e^(-A v^-10) by -(5A/4) v^-2.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath
from mpmath import mp

from .errors import ConsistencyError
from .numeric import (DEFAULT_PRECISION, const_eval, map_count_limit,
                      stokes_reference, to_mpf)
from .scalars import ConstElem, SQRT3, SQRT6, sqrt_pi
from .series import TruncSeries

#: exponent of the exponential prefactor: A = 8*sqrt(3)/5, A^2 = 192/25
A_CONST = ConstElem.symbol(SQRT3, 1, Fraction(8, 5))
A_SQUARED = Fraction(192, 25)

_lock = threading.Lock()
_a_cache: list[Fraction] = [Fraction(1)]


def a_seq(g_max: int) -> list[Fraction]:
    """Coefficients a_0..a_g_max of the formal Painleve I solution, from
    a_g = (25(g-1)^2 - 1)/48 a_{g-1} - 1/2 sum_{l=1}^{g-1} a_l a_{g-l}."""
    if g_max < 0:
        raise ValueError("g_max must be >= 0")
    with _lock:
        for g in range(len(_a_cache), g_max + 1):
            val = Fraction(25 * (g - 1) ** 2 - 1, 48) * _a_cache[g - 1]
            val -= Fraction(1, 2) * sum(_a_cache[l] * _a_cache[g - l]
                                        for l in range(1, g))
            _a_cache.append(val)
        return _a_cache[: g_max + 1]


def f_seq_recursive(g_max: int) -> list[ConstElem]:
    """The singularity-coefficient sequence f_g straight from its recursion
    f_g = sqrt6/96 (5g-4)(5g-6) f_{g-1} + 6 sqrt6 sum f_h f_{g-h},
    with f_0 = -sqrt6/72."""
    sqrt6_over_96 = ConstElem.symbol(SQRT6, 1, Fraction(1, 96))
    six_sqrt6 = ConstElem.symbol(SQRT6, 1, 6)
    out = [ConstElem.symbol(SQRT6, 1, Fraction(-1, 72))]
    for g in range(1, g_max + 1):
        val = sqrt6_over_96 * Fraction((5 * g - 4) * (5 * g - 6)) * out[g - 1]
        conv = ConstElem.rational(0)
        for h in range(1, g):
            conv = conv + out[h] * out[g - h]
        out.append(val + six_sqrt6 * conv)
    return out


def gamma_half_integer(twice: int) -> ConstElem:
    """Exact Gamma(twice/2) for odd or even integer `twice`; half-integer
    arguments give rational multiples of sqrt(pi)."""
    if twice % 2 == 0:
        n = twice // 2
        if n < 1:
            raise ValueError("Gamma pole at non-positive integer")
        return ConstElem.rational(factorial(n - 1))
    # walk from Gamma(1/2) = sqrt(pi) using Gamma(x+1) = x Gamma(x)
    coeff = Fraction(1)
    x = Fraction(1, 2)
    target = Fraction(twice, 2)
    while x < target:
        coeff *= x
        x += 1
    while x > target:
        x -= 1
        coeff /= x
    return sqrt_pi(1) * coeff


def rising_factorial(x: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= x + i
    return out


@dataclass
class MapConstants:
    """Exact map-asymptotics sequences: f (leading-singularity coefficients),
    t (the growth constants), u (normalized ratios converging to the limiting
    constant)."""

    f: list  # ConstElem
    t: list  # ConstElem
    u: list  # Fraction; u[0] is None (defined for g >= 1)


def map_constants(g_max: int) -> MapConstants:
    """Compute f_g, t_g, u_g for g <= g_max, all exactly.

    f_g = f_0 (sqrt6/2)^g a_g; t_g inverts
    f_g = 24^(-3/2) 6^(g/2) Gamma((5g-1)/2) t_g with exact half-integer Gamma
    values; u_g = f_g (25 sqrt6/96)^(-g) 6 sqrt6 / ([1/5]_g [4/5]_{g-1}) with
    rising-factorial Pochhammer brackets, and is a plain rational.
    """
    if g_max < 0:
        raise ValueError("g_max must be >= 0")
    a = a_seq(g_max)
    f0 = ConstElem.symbol(SQRT6, 1, Fraction(-1, 72))
    growth = ConstElem.symbol(SQRT6, 1, Fraction(1, 2))
    f_list = []
    acc = ConstElem.rational(1)
    for g in range(g_max + 1):
        f_list.append(f0 * acc * a[g])
        acc = acc * growth

    twentyfour_32 = ConstElem.symbol(SQRT6, 1, 48)  # 24^(3/2)
    t_list = []
    for g in range(g_max + 1):
        six_pow = ConstElem.symbol(SQRT6, -g)       # 6^(-g/2)
        t_list.append(f_list[g] * twentyfour_32 * six_pow
                      * gamma_half_integer(5 * g - 1).inverse())

    inv_ratio = ConstElem.symbol(SQRT6, -1, Fraction(96, 25))  # (25 sqrt6/96)^(-1)
    six_sqrt6 = ConstElem.symbol(SQRT6, 1, 6)
    u_list: list = [None]
    acc = ConstElem.rational(1)
    for g in range(1, g_max + 1):
        acc = acc * inv_ratio
        poch = rising_factorial(Fraction(1, 5), g) * rising_factorial(Fraction(4, 5), g - 1)
        val = f_list[g] * acc * six_sqrt6 * Fraction(1, poch)
        u_list.append(val.as_fraction())
    return MapConstants(f_list, t_list, u_list)


def mu_seq(l_max: int) -> list[ConstElem]:
    """Trans-series correction coefficients mu_0..mu_l_max from
    mu_l = 5/(16 sqrt3 l) { 192/25 sum_k mu_k a_{(l-k+1)/2}
                            - (l - 9/10)(l - 1/10) mu_{l-1} },
    where half-integer a-indices contribute zero.  Odd entries are rational
    multiples of 1/sqrt3, even entries plain rationals."""
    if l_max < 0:
        raise ValueError("l_max must be >= 0")
    a = a_seq(l_max // 2 + 1)
    mus = [ConstElem.rational(1)]
    for l in range(1, l_max + 1):
        conv = ConstElem.rational(0)
        for k in range(l):
            n = l - k + 1
            if n % 2 == 0:
                conv = conv + mus[k] * a[n // 2]
        inner = conv * Fraction(192, 25) \
            - mus[l - 1] * ((l - Fraction(9, 10)) * (l - Fraction(1, 10)))
        mus.append(ConstElem.symbol(SQRT3, -1, Fraction(5, 16 * l)) * inner)
    return mus


# -- formal Painleve I ----------------------------------------------------------


def z_derivative(series: TruncSeries) -> TruncSeries:
    """d/dz acting on a series in v = z^(-1/8): v^k -> -(k/8) v^(k+8)."""
    out = {k + 8: Fraction(-k, 8) * c for k, c in series.terms().items()}
    return TruncSeries.from_terms(out, series.order + 8)


def _phi0(g_max: int, scalars=Fraction) -> TruncSeries:
    a = a_seq(g_max)
    terms = {20 * g - 4: (a[g] if scalars is Fraction else ConstElem.rational(a[g]))
             for g in range(g_max + 1)}
    # coefficients between consecutive nonzero exponents are known zero; the
    # next undetermined one sits at 20(g_max+1)-4
    return TruncSeries.from_terms(terms, 20 * (g_max + 1) - 4)


def painleve_residual(g_max: int) -> TruncSeries:
    """phi^2 - phi''/6 - z for the formal solution truncated at g_max.

    Every coefficient inside the truncation horizon must vanish exactly;
    a nonzero one raises ConsistencyError.
    """
    if g_max < 1:
        raise ValueError("g_max must be >= 1")
    phi = _phi0(g_max)
    res = phi * phi - z_derivative(z_derivative(phi)).scale(Fraction(1, 6))
    res = res - TruncSeries.monomial(1, -8, res.order)
    if not res.is_zero():
        bad = res.nonzero_exponents()[0]
        raise ConsistencyError(
            f"formal solution residual has {res.coeff(bad)} at v^{bad}")
    return res


def solve_painleve(g_max: int) -> list[Fraction]:
    """Derive the coefficient sequence from the differential equation itself.

    At each step the residual coefficient at v^(20g-8) is linear in the new
    coefficient with factor 2 (twice the leading coefficient); solving gives
    the same sequence as the recursion, independently.
    """
    a = [Fraction(1)]
    for g in range(1, g_max + 1):
        terms = {20 * h - 4: a[h] for h in range(g)}
        terms[20 * g - 4] = Fraction(0)  # candidate, enters linearly
        phi = TruncSeries.from_terms(terms, 20 * g - 3)
        res = phi * phi - z_derivative(z_derivative(phi)).scale(Fraction(1, 6))
        res = res - TruncSeries.monomial(1, -8, res.order)
        a.append(-res.coeff(20 * g - 8) / 2)
    return a


# -- trans-series -------------------------------------------------------------


@dataclass(frozen=True)
class ExpGradedSeries:
    """body * e^(-m A v^-10), with the body a series in v."""

    exp_multiplier: int
    body: TruncSeries

    def z_derivative(self, a_value=A_CONST) -> "ExpGradedSeries":
        m = self.exp_multiplier
        deriv = z_derivative(self.body)
        if m:
            pref = a_value * Fraction(-5 * m, 4)
            shifted = self.body.shift(-2).scale(pref)
            deriv = deriv + shifted
        return ExpGradedSeries(m, deriv)

    def __mul__(self, other: "ExpGradedSeries") -> "ExpGradedSeries":
        return ExpGradedSeries(self.exp_multiplier + other.exp_multiplier,
                               self.body * other.body)

    def __add__(self, other: "ExpGradedSeries") -> "ExpGradedSeries":
        if self.exp_multiplier != other.exp_multiplier:
            raise ValueError("cannot add components with different exponential grades")
        return ExpGradedSeries(self.exp_multiplier, self.body + other.body)

    def scale(self, c) -> "ExpGradedSeries":
        return ExpGradedSeries(self.exp_multiplier, self.body.scale(c))

    def is_zero(self) -> bool:
        return self.body.is_zero()


def _correction_body(mus: list, l_top: int, order: int) -> TruncSeries:
    terms = {10 * l + 1: mus[l] for l in range(min(l_top, len(mus) - 1) + 1)}
    return TruncSeries.from_terms(terms, order)


def transseries_residual(g_max: int, l_max: int,
                         a_value=A_CONST, mus=None) -> ExpGradedSeries:
    """The linearized residual 2 phi psi - psi''/6 at first exponential order.

    psi = v e^(-A v^-10) sum_l mu_l v^(10l).  With the exact exponent constant
    and correction coefficients, every coefficient inside the horizon vanishes;
    a nonzero one raises ConsistencyError.
    """
    if g_max < l_max // 2 + 1:
        raise ValueError("g_max must be at least l_max/2 + 1")
    strict = mus is None and a_value == A_CONST
    if mus is None:
        mus = mu_seq(l_max)
    phi = ExpGradedSeries(0, _phi0(g_max, scalars=ConstElem))
    psi = ExpGradedSeries(1, _correction_body(mus, l_max, 10 * l_max + 11))
    second = psi.z_derivative(a_value).z_derivative(a_value)
    res = (phi * psi).scale(2) + second.scale(Fraction(-1, 6))
    if strict and not res.is_zero():
        bad = res.body.nonzero_exponents()[0]
        raise ConsistencyError(
            f"trans-series residual has {res.body.coeff(bad)} at v^{bad}")
    return res


def transseries_leading_balance() -> tuple:
    """Fix the exponent constant from the leading residual order.

    Runs the residual with the exponent constant as a free symbol; the leading
    coefficient is 2 - (25/96) A^2, so the balance forces A^2 = 192/25.
    Returns (leading coefficient as ConstElem in the symbol "A",
             solved A^2, exact A)."""
    symbol_a = ConstElem.symbol("A")
    phi = ExpGradedSeries(0, _phi0(1, scalars=ConstElem))
    psi = ExpGradedSeries(1, _correction_body([ConstElem.rational(1)], 0, 11))
    second = psi.z_derivative(symbol_a).z_derivative(symbol_a)
    res = (phi * psi).scale(2) + second.scale(Fraction(-1, 6))
    lead = res.body.coeff(-3)
    # lead = c0 + c2 A^2; solve c0 + c2 x = 0
    c0 = lead.coeff_of()
    c2 = lead.coeff_of(("A", 2))
    solved = -c0 / c2
    if solved != A_SQUARED:
        raise ConsistencyError(f"leading balance solved A^2 = {solved}")
    return lead, solved, A_CONST


def solve_transseries(l_max: int) -> list[ConstElem]:
    """Derive the correction coefficients from the linearized equation itself.

    The candidate mu_l first appears at residual order v^(10l+7) through the
    derivative terms with factor -(25/48) A l; its resonant contribution at
    v^(10l-3) cancels identically, which is what makes the order-by-order
    solve well posed.  Regenerates the recursion's output independently.
    """
    mus = [ConstElem.rational(1)]
    g_need = l_max // 2 + 2
    phi = ExpGradedSeries(0, _phi0(g_need, scalars=ConstElem))
    for l in range(1, l_max + 1):
        trial = mus + [ConstElem.rational(0), ConstElem.rational(0)]
        psi = ExpGradedSeries(1, _correction_body(trial, l + 1, 10 * (l + 1) + 2))
        second = psi.z_derivative().z_derivative()
        res = (phi * psi).scale(2) + second.scale(Fraction(-1, 6))
        coeff = res.body.coeff(10 * l + 7)
        linear = A_CONST * Fraction(25 * l, 48)
        mus.append(coeff * linear.inverse())
    return mus


# -- numeric asymptotics ------------------------------------------------------


def richardson(seq, depth: int, start_index: int = 1, precision: int = DEFAULT_PRECISION):
    """Iterated Richardson transform assuming corrections in powers of 1/n.

    seq[i] is the sequence value at n = start_index + i.  Returns (value,
    stability) where stability is the difference between the last entries of
    the two deepest levels.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if len(seq) <= depth:
        raise ValueError("sequence must be longer than the depth")
    with mp.workprec(precision):
        cur = [x if isinstance(x, mpmath.mpf) else to_mpf(x, precision) for x in seq]
        prev_last = cur[-1]
        for k in range(1, depth + 1):
            nxt = []
            for i in range(len(cur) - 1):
                n = start_index + i
                nxt.append(((n + k) * cur[i + 1] - n * cur[i]) / k)
            prev_last = cur[-1]
            cur = nxt
        return cur[-1], abs(cur[-1] - prev_last)


@dataclass
class LimitEstimate:
    value: mpmath.mpf
    stability: mpmath.mpf
    reference: mpmath.mpf
    matched_digits: float
    precision: int


def _digits(value, reference, precision: int) -> float:
    with mp.workprec(precision):
        rel = abs(value / reference - 1)
        if rel == 0:
            return float(precision * 0.30103)  # agreement to full working precision
        return float(-mpmath.log10(rel))


def k_estimate(g_max: int = 120, depth: int = 8,
               precision: int = DEFAULT_PRECISION) -> LimitEstimate:
    """Richardson-accelerate the exact ratio sequence u_g toward its limit
    and compare against the closed form."""
    u = map_constants(g_max).u
    with mp.workprec(precision):
        value, stab = richardson(u[1:], depth, start_index=1, precision=precision)
        ref = map_count_limit(precision)
    return LimitEstimate(value, stab, ref, _digits(value, ref, precision), precision)


def stokes_sequence(g_max: int, l_corrections: int, g_start: int,
                    precision: int = DEFAULT_PRECISION) -> list:
    """S_est(g) = pi a_g A^(2g-1/2) / Gamma(2g-1/2), divided by the bracket
    of 1/g corrections truncated at l_corrections."""
    a = a_seq(g_max)
    mus = mu_seq(l_corrections)
    with mp.workprec(precision):
        a_f = to_mpf(A_SQUARED, precision)  # A^2 exactly rational
        sqrt_a = mpmath.sqrt(mpmath.sqrt(a_f))  # A^(1/2)
        mu_f = [const_eval(m, precision) for m in mus]
        a_pow = [mpmath.power(a_f, l * mpmath.mpf("0.5")) for l in range(l_corrections + 1)]
        out = []
        for g in range(g_start, g_max + 1):
            half = 2 * g - mpmath.mpf("0.5")
            val = mpmath.pi * to_mpf(a[g], precision) \
                * mpmath.power(a_f, g) / sqrt_a / mpmath.gamma(half)
            bracket = mpmath.mpf(1)
            prod = mpmath.mpf(1)
            for l in range(1, l_corrections + 1):
                prod *= half - l
                bracket += mu_f[l] * a_pow[l] / prod
            out.append(val / bracket)
        return out


def estimate_stokes(g_max: int, l_corrections: int, depth: int = 6,
                    precision: int = DEFAULT_PRECISION,
                    g_start: int | None = None) -> LimitEstimate:
    """Large-order recovery of the Stokes parameter, Richardson-accelerated,
    compared against the closed form -3^(1/4)/(2 sqrt(pi))."""
    if g_max < 20:
        raise ValueError("g_max must be >= 20")
    if g_start is None:
        g_start = max(3, l_corrections + 1)
    seq = stokes_sequence(g_max, l_corrections, g_start, precision)
    with mp.workprec(precision):
        if depth >= 1:
            value, stab = richardson(seq, depth, start_index=g_start,
                                     precision=precision)
        else:
            value, stab = seq[-1], abs(seq[-1] - seq[-2])
        ref = stokes_reference(precision)
    return LimitEstimate(value, stab, ref, _digits(value, ref, precision), precision)


def tg_asymptotic_check(g_max: int, precision: int = DEFAULT_PRECISION) -> list:
    """Ratios t_g / [40 sin(pi/5) K / sqrt(2 pi) * (1440 g / e)^(-g/2)] for
    g = 1..g_max; they approach 1."""
    if g_max < 10:
        raise ValueError("g_max must be >= 10")
    consts = map_constants(g_max)
    with mp.workprec(precision):
        k_ref = map_count_limit(precision)
        front = 40 * mpmath.sin(mpmath.pi / 5) * k_ref / mpmath.sqrt(2 * mpmath.pi)
        ratios = []
        for g in range(1, g_max + 1):
            t_val = const_eval(consts.t[g], precision)
            lead = front * mpmath.power(1440 * g / mpmath.e, -mpmath.mpf(g) / 2)
            ratios.append(t_val / lead)
        return ratios
