"""Dense truncated Laurent series with explicit truncation order.

A :class:`TruncSeries` knows its coefficients exactly on the window
``[valuation, order)`` and nothing beyond.  Every operation propagates the
truncation so that no coefficient at or past the minimum known order of the
inputs is ever reported.  Coefficients are ``fractions.Fraction`` or
:class:`~csfree.scalars.ConstElem`; all arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .scalars import ConstElem, format_rational, parse_rational

_ZERO = Fraction(0)


def _inv_scalar(c):
    if isinstance(c, ConstElem):
        return c.inverse()
    return 1 / Fraction(c)


def _is_zero(c) -> bool:
    return not c


class TruncSeries:
    """Truncated Laurent series sum_{k=v}^{order-1} c_k x^k + O(x^order)."""

    __slots__ = ("valuation", "coeffs", "order")

    def __init__(self, valuation: int, coeffs: Sequence, order: int):
        coeffs = list(coeffs)
        if len(coeffs) != order - valuation:
            raise ValueError(
                f"need {order - valuation} coefficients for [{valuation}, {order}), "
                f"got {len(coeffs)}")
        while coeffs and _is_zero(coeffs[0]):
            coeffs.pop(0)
            valuation += 1
        self.valuation = valuation if coeffs else order
        self.coeffs = coeffs
        self.order = order

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "TruncSeries":
        return cls(order, [], order)

    @classmethod
    def one(cls, order: int) -> "TruncSeries":
        return cls.monomial(1, 0, order)

    @classmethod
    def monomial(cls, coeff, exponent: int, order: int) -> "TruncSeries":
        if exponent >= order:
            raise ValueError(f"exponent {exponent} not below order {order}")
        pad = [_ZERO] * (order - exponent - 1)
        return cls(exponent, [_coerce(coeff)] + pad, order)

    @classmethod
    def from_terms(cls, terms: Mapping[int, object], order: int) -> "TruncSeries":
        if not terms:
            return cls.zero(order)
        val = min(terms)
        if max(terms) >= order:
            raise ValueError("term exponent at or beyond requested order")
        coeffs = [_ZERO] * (order - val)
        for k, c in terms.items():
            coeffs[k - val] = _coerce(c)
        return cls(val, coeffs, order)

    @classmethod
    def exp_x(cls, order: int) -> "TruncSeries":
        """The series of e^x."""
        fact = 1
        coeffs = []
        for n in range(max(order, 0)):
            coeffs.append(Fraction(1, fact))
            fact *= n + 1
        return cls(0, coeffs, order)

    # -- inspection ------------------------------------------------------------

    def coeff(self, k: int):
        """Exact coefficient of x^k; raises beyond the truncation order."""
        if k >= self.order:
            raise ValueError(f"coefficient {k} is beyond truncation order {self.order}")
        if k < self.valuation:
            return _ZERO
        return self.coeffs[k - self.valuation]

    def terms(self) -> dict[int, object]:
        return {self.valuation + i: c
                for i, c in enumerate(self.coeffs) if not _is_zero(c)}

    def is_zero(self) -> bool:
        return not any(not _is_zero(c) for c in self.coeffs)

    def nonzero_exponents(self) -> list[int]:
        return sorted(self.terms())

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.valuation, self.order) == (other.valuation, other.order) \
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))

    def __hash__(self):
        return hash((self.valuation, self.order, tuple(self.coeffs)))

    def agrees_with(self, other: "TruncSeries") -> bool:
        """Exact equality on the intersection of the known windows."""
        lo = min(self.valuation, other.valuation)
        hi = min(self.order, other.order)
        return all(self.coeff(k) == other.coeff(k) for k in range(lo, hi))

    def __repr__(self):
        ts = self.terms()
        if not ts:
            return f"O(x^{self.order})"
        bits = [f"({c})*x^{k}" for k, c in sorted(ts.items())]
        return " + ".join(bits) + f" + O(x^{self.order})"

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.monomial(other, 0, self.order)
        order = min(self.order, other.order)
        val = min(self.valuation, other.valuation, order)
        coeffs = [_ZERO] * (order - val)
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                k = s.valuation + i
                if k < order:
                    coeffs[k - val] = coeffs[k - val] + c
        return TruncSeries(val, coeffs, order)

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.valuation, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, TruncSeries):
            other = TruncSeries.monomial(other, 0, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        c = _coerce(c)
        return TruncSeries(self.valuation, [c * x for x in self.coeffs], self.order)

    # -- multiplicative structure ------------------------------------------

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        order = min(self.order + other.valuation, other.order + self.valuation)
        val = self.valuation + other.valuation
        n = order - val
        if n <= 0:
            return TruncSeries.zero(order)
        out = [_ZERO] * n
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            jmax = min(len(other.coeffs), n - i)
            for j in range(jmax):
                b = other.coeffs[j]
                if not _is_zero(b):
                    out[i + j] = out[i + j] + a * b
        return TruncSeries(val, out, order)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, other: "TruncSeries") -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            return self.scale(_inv_scalar(other))
        if not other.coeffs or _is_zero(other.coeffs[0]):
            raise ZeroDivisionError("division needs an invertible leading coefficient")
        n = min(self.order - self.valuation, other.order - other.valuation)
        val = self.valuation - other.valuation
        if n <= 0:
            return TruncSeries.zero(val)
        inv_lead = _inv_scalar(other.coeffs[0])
        a = self.coeffs[:n] + [_ZERO] * max(0, n - len(self.coeffs))
        b = other.coeffs
        q = [_ZERO] * n
        for i in range(n):
            acc = a[i]
            for j in range(1, min(i, len(b) - 1) + 1):
                if not _is_zero(b[j]) and not _is_zero(q[i - j]):
                    acc = acc - b[j] * q[i - j]
            q[i] = inv_lead * acc
        return TruncSeries(val, q, val + n)

    def pow_int(self, m: int) -> "TruncSeries":
        if m < 0:
            return TruncSeries.one(self.order) / self.pow_int(-m)
        # repeated multiplication keeps the truncation bookkeeping exact
        result = None
        base = self
        while m:
            if m & 1:
                result = base if result is None else result * base
            m >>= 1
            if m:
                base = base * base
        return TruncSeries.one(self.order) if result is None else result

    # -- transcendental operations -------------------------------------------

    def exp(self) -> "TruncSeries":
        """exp of a series with valuation >= 1; result known to the same order."""
        if self.coeffs and self.valuation < 1:
            raise ValueError("exp needs valuation >= 1")
        order = self.order
        if order <= 0:
            raise ValueError("exp needs positive truncation order")
        f = [self.coeff(k) if self.valuation <= k < order else _ZERO
             for k in range(order)]
        g = [_ZERO] * order
        g[0] = Fraction(1)
        for n in range(1, order):
            acc = _ZERO
            for j in range(1, n + 1):
                if not _is_zero(f[j]) and not _is_zero(g[n - j]):
                    acc = acc + (j * f[j]) * g[n - j]
            g[n] = Fraction(1, n) * acc
        return TruncSeries(0, g, order)

    def log(self) -> "TruncSeries":
        """log of a series with leading coefficient 1 at valuation 0."""
        if self.valuation != 0 or not self.coeffs or self.coeffs[0] != 1:
            raise ValueError("log needs leading coefficient 1 at valuation 0")
        order = self.order
        f = self.coeffs
        h = [_ZERO] * order
        for n in range(1, order):
            acc = (n * f[n]) if n < len(f) else _ZERO
            for j in range(1, n):
                fn = f[n - j] if n - j < len(f) else _ZERO
                if not _is_zero(h[j]) and not _is_zero(fn):
                    acc = acc - (j * h[j]) * fn
            h[n] = Fraction(1, n) * acc
        return TruncSeries(0, h, order)

    # -- calculus ----------------------------------------------------------

    def derivative(self) -> "TruncSeries":
        out = {}
        for k, c in self.terms().items():
            if k:
                out[k - 1] = k * c
        return TruncSeries.from_terms(out, self.order - 1)

    def antiderivative(self) -> "TruncSeries":
        """Term-wise antiderivative with zero constant; x^-1 must be absent."""
        out = {}
        for k, c in self.terms().items():
            if k == -1:
                raise ValueError("antiderivative of x^-1 leaves the ring")
            out[k + 1] = Fraction(1, k + 1) * c
        return TruncSeries.from_terms(out, self.order + 1)

    def rescale(self, c) -> "TruncSeries":
        """Substitute x -> c*x."""
        c = Fraction(c) if not isinstance(c, ConstElem) else c
        out = []
        for i, a in enumerate(self.coeffs):
            k = self.valuation + i
            factor = c ** k if k >= 0 else _inv_scalar(c) ** (-k)
            out.append(a * factor)
        return TruncSeries(self.valuation, out, self.order)

    def shift(self, n: int) -> "TruncSeries":
        """Multiply by x^n."""
        return TruncSeries(self.valuation + n, list(self.coeffs), self.order + n)

    def truncate(self, order: int) -> "TruncSeries":
        if order >= self.order:
            return self
        if order <= self.valuation:
            return TruncSeries(order, [], order)
        return TruncSeries(self.valuation, self.coeffs[: order - self.valuation], order)

    def compose_poly(self, poly: Sequence) -> "TruncSeries":
        """Evaluate an integer/rational polynomial (coefficient list, ascending)
        at this series via Horner's rule."""
        acc = TruncSeries.zero(self.order)
        for c in reversed(list(poly)):
            acc = acc * self + Fraction(c)
        return acc

    def map_coeffs(self, fn: Callable) -> "TruncSeries":
        return TruncSeries(self.valuation, [fn(c) for c in self.coeffs], self.order)

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for k in self.nonzero_exponents():
            c = self.coeff(k)
            if isinstance(c, ConstElem):
                terms.append({"exponent": k, "coeff": c.to_json()})
            else:
                terms.append({"exponent": k, "coeff": format_rational(c)})
        return {"valuation": self.valuation, "order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "TruncSeries":
        terms = {}
        for item in data["terms"]:
            c = item["coeff"]
            terms[item["exponent"]] = (
                ConstElem.from_json(c) if isinstance(c, list) else parse_rational(c))
        return cls.from_terms(terms, data["order"])


def _coerce(c):
    if isinstance(c, (Fraction, ConstElem)):
        return c
    return Fraction(c)


_BINARY = {"add", "mul", "div"}
_UNARY = {"exp", "log", "derivative", "antiderivative"}


def series_op(kind: str, a: TruncSeries, b=None) -> TruncSeries:
    """Uniform dispatcher over the series operations.

    ``kind`` is one of add, mul, div, exp, log, derivative, antiderivative,
    rescale-argument; ``b`` is the second series (add/mul/div) or the scalar
    argument factor (rescale-argument).
    """
    if kind in _BINARY:
        if b is None:
            raise ValueError(f"{kind} needs a second operand")
        return {"add": a.__add__, "mul": a.__mul__, "div": a.__truediv__}[kind](b)
    if kind in _UNARY:
        return getattr(a, kind)()
    if kind == "rescale-argument":
        if b is None:
            raise ValueError("rescale-argument needs a scalar factor")
        return a.rescale(b)
    raise ValueError(f"unknown series operation {kind!r}")
