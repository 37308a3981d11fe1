"""Free energy of lens spaces, exactly.

``L(d, b)`` is encoded by coprime integers; the genus-g free-energy series is
assembled over Q from the auxiliary series (argument rescaled by 1/d) together
with a Casson-invariant correction at genus 0 and 1.  A closed-form route
through polylogarithms validates the assembly, a fixed-rank specialization
cross-checks the whole genus tower against a direct root-system sum, and the
coefficient table feeds an empirical growth-constant estimate.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, gcd

import mpmath
from mpmath import mp

from .bernoulli import bernoulli
from .numeric import DEFAULT_PRECISION, to_mpf
from .polylog import f_aux_closed, f_aux_series, f_series
from .scalars import format_rational
from .series import TruncSeries

#: recognized Casson-invariant normalizations, as multiples of the Dedekind sum
LAMBDA_CONVENTIONS = {"-s/2": Fraction(-1, 2), "s/2": Fraction(1, 2)}
DEFAULT_LAMBDA_CONVENTION = "-s/2"


@dataclass(frozen=True)
class LensSpace:
    """L(d, b): d/b surgery on the unknot; (1, 0) is the 3-sphere."""

    d: int
    b: int

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be a positive integer")
        if self.d == 1:
            if self.b != 0:
                raise ValueError("the d = 1 space is canonicalized as L(1, 0)")
        elif not (0 < self.b < self.d):
            raise ValueError("need 0 < b < d")
        elif gcd(self.d, self.b) != 1:
            raise ValueError(f"gcd({self.d}, {self.b}) != 1")

    def __str__(self):
        return f"L({self.d},{self.b})"


def dedekind_sum(b: int, d: int) -> Fraction:
    """Classical Dedekind sum s(b, d) = sum_k ((k/d))((kb/d)) with the
    sawtooth ((x)) = x - floor(x) - 1/2 away from integers, 0 at integers."""
    if d < 1:
        raise ValueError("d must be positive")
    if gcd(b, d) != 1:
        raise ValueError(f"Dedekind sum needs gcd(b, d) = 1, got ({b}, {d})")

    def saw(num: int) -> Fraction:
        if num % d == 0:
            return Fraction(0)
        return Fraction(num % d, d) - Fraction(1, 2)

    return sum((saw(k) * saw(k * b) for k in range(1, d)), Fraction(0))


def casson_invariant(space: LensSpace,
                     convention: str = DEFAULT_LAMBDA_CONVENTION) -> Fraction:
    """Casson invariant of L(d, b) under the configured normalization."""
    factor = LAMBDA_CONVENTIONS[convention]
    if space.d == 1:
        return Fraction(0)
    return factor * dedekind_sum(space.b, space.d)


def free_energy_genus(space: LensSpace, g: int, order: int,
                      convention: str = DEFAULT_LAMBDA_CONVENTION,
                      route: str = "series") -> TruncSeries:
    """Genus-g free-energy series of L(d, b) to the given truncation order.

    The normative route assembles (1-2g) B_{2g}/(2g)! times
    (d^(2-2g) F_g(t/d) - F_g(t)) from the auxiliary-series coefficients, plus
    the Casson term (lambda/2)(t^3 at g=0, -t at g=1).  route="closed" swaps
    in the polylogarithm closed form of F_g (g >= 1) as an independent check.
    """
    if g < 0:
        raise ValueError("genus must be >= 0")
    if order < 4:
        raise ValueError("order must be at least 4")
    if route == "series":
        aux = f_aux_series(g, order)
    elif route == "closed":
        aux = f_aux_closed(g, order)
    else:
        raise ValueError(f"unknown route {route!r}")
    d = space.d
    pref = (1 - 2 * g) * bernoulli(2 * g) / factorial(2 * g)
    combined = (aux.rescale(Fraction(1, d)).scale(Fraction(d) ** (2 - 2 * g))
                - aux).scale(pref)
    lam = casson_invariant(space, convention)
    if g == 0:
        combined = combined + TruncSeries.monomial(lam / 2, 3, order)
    elif g == 1:
        combined = combined - TruncSeries.monomial(lam / 2, 1, order)
    return combined


@dataclass
class FreeEnergyTable:
    """Coefficients a[g, d'] = [t^d'] (genus-g free energy) for a lens space."""

    space: LensSpace
    g_max: int
    d_max: int
    convention: str
    entries: dict = field(default_factory=dict)  # (g, d') -> Fraction

    def coefficient(self, g: int, dp: int) -> Fraction:
        return self.entries[(g, dp)]

    def to_json(self) -> dict:
        return {
            "schema": "csfree/lens-table/1",
            "d": self.space.d,
            "b": self.space.b,
            "lambda_convention": self.convention,
            "lambda": format_rational(casson_invariant(self.space, self.convention)),
            "dedekind_sum": format_rational(
                dedekind_sum(self.space.b, self.space.d)
                if self.space.d > 1 else Fraction(0)),
            "g_max": self.g_max,
            "d_max": self.d_max,
            "entries": [
                {"g": g, "d": dp, "coeff": format_rational(self.entries[(g, dp)])}
                for (g, dp) in sorted(self.entries)
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["g", "d", "coeff"])
        for (g, dp) in sorted(self.entries):
            writer.writerow([g, dp, format_rational(self.entries[(g, dp)])])
        return buf.getvalue()


def free_energy_table(space: LensSpace, g_max: int, d_max: int,
                      convention: str = DEFAULT_LAMBDA_CONVENTION) -> FreeEnergyTable:
    """Tabulate all admissible coefficients with g <= g_max, d' <= d_max.

    Admissible means 2g - 2 + d' > 0 and d' > 0; inadmissible slots carry no
    entry at all.
    """
    if g_max < 1 or d_max < 1:
        raise ValueError("bounds must be >= 1")
    table = FreeEnergyTable(space, g_max, d_max, convention)
    for g in range(g_max + 1):
        series = free_energy_genus(space, g, d_max + 1, convention)
        for dp in range(1, d_max + 1):
            if 2 * g - 2 + dp > 0:
                table.entries[(g, dp)] = series.coeff(dp)
    return table


def sln_specialization_residual(space: LensSpace, rank: int, order: int,
                                convention: str = DEFAULT_LAMBDA_CONVENTION
                                ) -> TruncSeries:
    """Difference of the two fixed-rank specializations; identically zero.

    Route one substitutes t = N*h into the genus tower and sums with weights
    h^(2g-2).  Route two is the direct positive-root sum
    (lambda/2)(N^3 - N) h + sum_{j<N} (N-j) (f(j h / d) - f(j h)).  Their
    difference is returned so callers can assert exact vanishing.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    n = rank
    tower = TruncSeries.zero(order + 1)
    g = 0
    while 2 * g - 2 <= order:
        series = free_energy_genus(space, g, order + 3, convention)
        shifted = series.rescale(n).shift(2 * g - 2).truncate(order + 1)
        tower = tower + shifted
        g += 1

    lam = casson_invariant(space, convention)
    direct = TruncSeries.monomial(lam / 2 * (n ** 3 - n), 1, order + 1)
    base = f_series(order + 1)
    for j in range(1, n):
        delta = base.rescale(Fraction(j, space.d)) - base.rescale(j)
        direct = direct + delta.scale(n - j)
    return tower - direct


@dataclass
class GevreyReport:
    """Empirical minimal C with |a[g,d]| <= C^(g+d) * (2g)! over a table."""

    space: LensSpace
    g_max: int
    d_max: int
    c_min: mpmath.mpf
    attained_at: tuple
    prefix_c: list  # (g_max_prefix, C) pairs
    non_increasing_beyond_3: bool
    precision: int


def gevrey_estimate(space: LensSpace, g_max: int, d_max: int,
                    convention: str = DEFAULT_LAMBDA_CONVENTION,
                    precision: int = DEFAULT_PRECISION) -> GevreyReport:
    """Scan the coefficient table for the minimal Gevrey-type constant.

    C_min is the max over entries of (|a|/(2g)!)^(1/(g+d)); the report also
    tracks the prefix maxima as rows g <= 3, 4, ... are added, to exhibit that
    the constant stops growing.
    """
    if g_max < 2 or d_max < 2:
        raise ValueError("bounds must be >= 2")
    table = free_energy_table(space, g_max, d_max, convention)
    with mp.workprec(precision):
        best = mpmath.mpf(0)
        arg = None
        per_genus = {}
        for (g, dp), val in table.entries.items():
            if not val:
                continue
            ratio = to_mpf(abs(val), precision) / to_mpf(factorial(2 * g), precision)
            c = ratio ** (mpmath.mpf(1) / (g + dp))
            per_genus[g] = max(per_genus.get(g, mpmath.mpf(0)), c)
            if c > best:
                best, arg = c, (g, dp)
        prefix = []
        running = mpmath.mpf(0)
        for g in range(g_max + 1):
            running = max(running, per_genus.get(g, mpmath.mpf(0)))
            prefix.append((g, running))
        tail = [c for g, c in prefix if g >= 3]
        non_increasing = all(b <= a for a, b in zip(tail, tail[1:]))
    return GevreyReport(space, g_max, d_max, best, arg, prefix,
                        non_increasing, precision)
