"""Truncated multivariate power series over Q."""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .polynomial import Exponent, RationalPoly, Scalar, as_rat, grlex_key


class NotInvertibleError(ArithmeticError):
    pass


def rational_sqrt(c: Fraction) -> Fraction | None:
    """Positive rational square root of ``c`` or None if ``c`` is not a square."""
    c = Fraction(c)
    if c < 0:
        return None
    n, d = c.numerator, c.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


class TruncSeries:
    """A power series known modulo all monomials of total degree >= ``order``."""

    __slots__ = ("variables", "order", "_terms")

    def __init__(self, variables: Sequence[str], order: int, terms: Mapping[Exponent, Scalar] | None = None):
        if order < 1:
            raise ValueError("truncation order must be positive")
        self.variables = tuple(variables)
        self.order = order
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != len(self.variables):
                raise ValueError(f"exponent {e} does not match variables")
            c = as_rat(c)
            if c and sum(e) < order:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean

    @classmethod
    def from_poly(cls, p: RationalPoly, order: int) -> "TruncSeries":
        return cls(p.variables, order, p.terms)

    @classmethod
    def constant(cls, variables: Sequence[str], order: int, c: Scalar) -> "TruncSeries":
        return cls(variables, order, {(0,) * len(tuple(variables)): c})

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def to_poly(self) -> RationalPoly:
        return RationalPoly(self.variables, self._terms)

    def _check(self, other: "TruncSeries") -> int:
        if other.variables != self.variables:
            raise ValueError("series over different variables")
        return min(self.order, other.order)

    def _lift(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        if isinstance(other, RationalPoly):
            return TruncSeries.from_poly(other.with_variables(self.variables), self.order)
        return TruncSeries.constant(self.variables, self.order, as_rat(other))

    def __add__(self, other) -> "TruncSeries":
        other = self._lift(other)
        order = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(self.variables, order, out)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.variables, self.order, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "TruncSeries":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "TruncSeries":
        return self._lift(other) - self

    def __mul__(self, other) -> "TruncSeries":
        if not isinstance(other, (TruncSeries, RationalPoly)):
            c = as_rat(other)
            return TruncSeries(self.variables, self.order, {e: c * v for e, v in self._terms.items()})
        other = self._lift(other)
        order = self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            d1 = sum(e1)
            for e2, c2 in other._terms.items():
                if d1 + sum(e2) >= order:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries(self.variables, order, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        out = TruncSeries.constant(self.variables, self.order, 1)
        for _ in range(n):
            out = out * self
        return out

    def __truediv__(self, other) -> "TruncSeries":
        if isinstance(other, (TruncSeries, RationalPoly)):
            return self * self._lift(other).inverse()
        return self * (1 / as_rat(other))

    def __rtruediv__(self, other) -> "TruncSeries":
        return self._lift(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return (self.variables, self.order, self._terms) == (other.variables, other.order, other._terms)
        if isinstance(other, (int, Fraction)):
            return self._terms == TruncSeries.constant(self.variables, self.order, other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.variables, self.order, frozenset(self._terms.items())))

    def _split_unit(self) -> tuple[Fraction, "TruncSeries"]:
        c0 = self.constant_term()
        if not c0:
            raise NotInvertibleError("series with zero constant term")
        u = self * (1 / c0) - 1
        return c0, u

    def inverse(self) -> "TruncSeries":
        c0, u = self._split_unit()
        # 1/(1+u) = sum (-u)^k; u^k vanishes once k >= order
        total = TruncSeries.constant(self.variables, self.order, 1)
        power = TruncSeries.constant(self.variables, self.order, 1)
        for _ in range(1, self.order):
            power = power * (-u)
            total = total + power
        return total * (1 / c0)

    def __repr__(self) -> str:
        body = str(self.to_poly())
        return f"TruncSeries({body} + O(deg {self.order}))"

    def sorted_items(self):
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))


def series_sqrt(s: TruncSeries) -> TruncSeries:
    """Square root with positive rational constant term.

    The constant term must be a nonzero square in Q; otherwise
    ``NotInvertibleError`` is raised (rescale coordinates first).
    """
    c0 = s.constant_term()
    if not c0:
        raise NotInvertibleError("square root of a series with zero constant term")
    root = rational_sqrt(c0)
    if root is None:
        raise NotInvertibleError(f"constant term {c0} is not a rational square")
    _, u = s._split_unit()
    # sqrt(1+u) = sum binom(1/2, k) u^k
    total = TruncSeries.constant(s.variables, s.order, 1)
    power = TruncSeries.constant(s.variables, s.order, 1)
    binom = Fraction(1)
    for k in range(1, s.order):
        binom = binom * (Fraction(1, 2) - (k - 1)) / k
        power = power * u
        total = total + power * binom
    return total * root
