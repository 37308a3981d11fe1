"""Exact scalars: rational serialization and the fixed symbolic-constant ring.

Rationals are plain :class:`fractions.Fraction` everywhere; they serialize as
``"p/q"`` strings.  :class:`ConstElem` is a finite Q-linear combination of
monomials in a fixed list of symbolic constants (sqrt6, sqrt3, 1/sqrt(pi),
pi^2, zeta(3), log m, ...).  The only reduction rules are ``sqrt6^2 = 6`` and
``sqrt3^2 = 3``; all other symbols are free generators with integer exponents,
so products like ``sqrt6*sqrt3`` stay unexpanded and ``(sqrt6*sqrt3)^2 = 18``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction, "ConstElem"]

#: symbols whose square is a rational integer
_SQUARE_REDUCES = {"sqrt6": 6, "sqrt3": 3}

#: symbols the numeric backend knows how to evaluate (log<m> handled separately)
KNOWN_SYMBOLS = ("sqrt6", "sqrt3", "invsqrtpi", "pisq", "zeta3")

SQRT6 = "sqrt6"
SQRT3 = "sqrt3"
INV_SQRT_PI = "invsqrtpi"
PI_SQUARED = "pisq"
ZETA3 = "zeta3"


def log_symbol(m: int) -> str:
    """Symbol for log m, created on demand for integer m >= 2."""
    if m < 2:
        raise ValueError(f"log symbol needs integer m >= 2, got {m}")
    return f"log{m}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (or "p") into a Fraction."""
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# a monomial is a sorted tuple of (symbol, exponent) pairs, exponent != 0
Monomial = tuple


def _reduce_monomial(pairs: Iterable[tuple[str, int]]) -> tuple[Monomial, Fraction]:
    """Collect exponents and apply square reductions; returns (monomial, carry)."""
    exps: dict[str, int] = {}
    for sym, e in pairs:
        if e:
            exps[sym] = exps.get(sym, 0) + e
    carry = Fraction(1)
    for sym, val in _SQUARE_REDUCES.items():
        e = exps.get(sym, 0)
        if e in (0, 1):
            continue
        r = e % 2
        carry *= Fraction(val) ** ((e - r) // 2)
        if r:
            exps[sym] = r
        else:
            del exps[sym]
    mono = tuple(sorted((s, e) for s, e in exps.items() if e))
    return mono, carry


class ConstElem:
    """Immutable element of the symbolic-constant ring over Q."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff:
                    clean[mono] = clean.get(mono, Fraction(0)) + coeff
        self._terms = {m: c for m, c in clean.items() if c}

    # -- constructors ------------------------------------------------------

    @classmethod
    def rational(cls, q) -> "ConstElem":
        return cls({(): Fraction(q)})

    @classmethod
    def symbol(cls, name: str, exponent: int = 1, coeff=1) -> "ConstElem":
        mono, carry = _reduce_monomial([(name, exponent)])
        return cls({mono: Fraction(coeff) * carry})

    @staticmethod
    def coerce(x: Scalar) -> "ConstElem":
        if isinstance(x, ConstElem):
            return x
        return ConstElem.rational(x)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_rational(self) -> bool:
        return not self._terms or set(self._terms) == {()}

    def as_fraction(self) -> Fraction:
        """The value as a Fraction; raises if any symbol survives."""
        if not self._terms:
            return Fraction(0)
        if not self.is_rational():
            raise ValueError(f"not a rational element: {self}")
        return self._terms[()]

    def coeff_of(self, *pairs: tuple[str, int]) -> Fraction:
        mono, carry = _reduce_monomial(pairs)
        if carry != 1:
            raise ValueError("coeff_of expects an already-reduced monomial")
        return self._terms.get(mono, Fraction(0))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        other = ConstElem.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return ConstElem(out)

    __radd__ = __add__

    def __neg__(self):
        return ConstElem({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-ConstElem.coerce(other))

    def __rsub__(self, other):
        return ConstElem.coerce(other) + (-self)

    def __mul__(self, other):
        other = ConstElem.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono, carry = _reduce_monomial(list(m1) + list(m2))
                c = c1 * c2 * carry
                if c:
                    out[mono] = out.get(mono, Fraction(0)) + c
        return ConstElem(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ConstElem.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inverse(self) -> "ConstElem":
        """Multiplicative inverse; defined only for single-monomial elements."""
        if len(self._terms) != 1:
            raise ValueError(f"cannot invert a {len(self._terms)}-term element")
        (mono, coeff), = self._terms.items()
        inv_mono, carry = _reduce_monomial([(s, -e) for s, e in mono])
        return ConstElem({inv_mono: carry / coeff})

    def __truediv__(self, other):
        other = ConstElem.coerce(other)
        return self * other.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ConstElem.rational(other)
        if not isinstance(other, ConstElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    # -- rendering / serialization -------------------------------------------

    @staticmethod
    def _mono_str(mono: Monomial) -> str:
        if not mono:
            return "1"
        parts = []
        for sym, e in mono:
            parts.append(sym if e == 1 else f"{sym}^{e}")
        return "*".join(parts)

    def __repr__(self):
        if not self._terms:
            return "0"
        bits = []
        for mono in sorted(self._terms):
            c = self._terms[mono]
            bits.append(f"{format_rational(c)}*{self._mono_str(mono)}"
                        if mono else format_rational(c))
        return " + ".join(bits)

    def to_json(self) -> list[dict]:
        return [
            {"monomial": self._mono_str(mono), "coeff": format_rational(c)}
            for mono in sorted(self._terms)
            for c in (self._terms[mono],)
        ]

    @classmethod
    def from_json(cls, items: list[dict]) -> "ConstElem":
        terms: dict[Monomial, Fraction] = {}
        for item in items:
            mono_str = item["monomial"]
            pairs = []
            if mono_str != "1":
                for factor in mono_str.split("*"):
                    if "^" in factor:
                        sym, e = factor.split("^")
                        pairs.append((sym, int(e)))
                    else:
                        pairs.append((factor, 1))
            mono, carry = _reduce_monomial(pairs)
            c = parse_rational(item["coeff"]) * carry
            terms[mono] = terms.get(mono, Fraction(0)) + c
        return cls(terms)


def sqrt6(coeff=1) -> ConstElem:
    return ConstElem.symbol(SQRT6, 1, coeff)


def sqrt3(coeff=1) -> ConstElem:
    return ConstElem.symbol(SQRT3, 1, coeff)


def sqrt_pi(exponent: int = 1) -> ConstElem:
    """sqrt(pi)^exponent, expressed through the 1/sqrt(pi) generator."""
    return ConstElem.symbol(INV_SQRT_PI, -exponent)
