"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent vectors to nonzero ``Fraction``
coefficients over an ordered tuple of variable names. Terms are kept in
graded-lexicographic order, so two polynomials over the same variables are
equal exactly when their term lists are equal.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Rat = Fraction
Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


def as_rat(value: Scalar | str) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to a rational")


def grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


class RationalPoly:
    """Immutable sparse polynomial over Q.

    >>> x, y = RationalPoly.gens(["x", "y"])
    >>> str((x + y) ** 2)
    'x^2 + 2*x*y + y^2'
    """

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, Scalar] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"repeated variable names in {variables}")
        n = len(variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent {exp}")
            c = as_rat(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        ordered = sorted(clean.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
        self._vars = variables
        self._terms = dict(ordered)
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "RationalPoly":
        # terms already clean (no zeros, right length); only ordering is applied
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._terms = dict(sorted(terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True))
        obj._hash = None
        return obj

    # construction helpers -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "RationalPoly":
        return cls(variables)

    @classmethod
    def constant(cls, variables: Sequence[str], c: Scalar) -> "RationalPoly":
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "RationalPoly":
        variables = tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"unknown variable {name!r}")
        return cls(variables, {exp: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> list["RationalPoly"]:
        return [cls.var(variables, v) for v in variables]

    @classmethod
    def monomial(cls, variables: Sequence[str], exp: Exponent, c: Scalar = 1) -> "RationalPoly":
        return cls(variables, {tuple(exp): c})

    # basic accessors -------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: Exponent) -> Fraction:
        return self._terms.get(tuple(exp), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self._index(name)
        return max((e[i] for e in self._terms), default=-1)

    def involves(self, name: str) -> bool:
        return self.degree_in(name) > 0

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.coeff((0,) * len(self._vars))

    def homogeneous_part(self, d: int) -> "RationalPoly":
        return RationalPoly._raw(self._vars, {e: c for e, c in self._terms.items() if sum(e) == d})

    def truncate(self, order: int) -> "RationalPoly":
        """Drop all terms of total degree >= order."""
        return RationalPoly._raw(self._vars, {e: c for e, c in self._terms.items() if sum(e) < order})

    def leading_term(self) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return next(iter(self._terms.items()))

    def _index(self, name: str) -> int:
        try:
            return self._vars.index(name)
        except ValueError:
            raise ValueError(f"variable {name!r} not in {self._vars}") from None

    # arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            if other._vars != self._vars:
                raise ValueError(f"variable mismatch: {self._vars} vs {other._vars}")
            return other
        return RationalPoly.constant(self._vars, as_rat(other))

    def __add__(self, other) -> "RationalPoly":
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return RationalPoly._raw(self._vars, out)

    __radd__ = __add__

    def __neg__(self) -> "RationalPoly":
        return RationalPoly._raw(self._vars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "RationalPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalPoly":
        if not isinstance(other, RationalPoly):
            c = as_rat(other)
            if not c:
                return RationalPoly._raw(self._vars, {})
            return RationalPoly._raw(self._vars, {e: c * v for e, v in self._terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return RationalPoly._raw(self._vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalPoly":
        if isinstance(other, RationalPoly):
            return self.divexact(other)
        c = as_rat(other)
        if not c:
            raise ZeroDivisionError("division by zero scalar")
        return self * (1 / c)

    def __pow__(self, n: int) -> "RationalPoly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = RationalPoly.constant(self._vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalPoly):
            return self._vars == other._vars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(0,) * len(self._vars): Fraction(other)}
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vars, frozenset(self._terms.items())))
        return self._hash

    def divexact(self, other: "RationalPoly") -> "RationalPoly":
        """Exact quotient; raises ``ValueError`` if ``other`` does not divide."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lead_e, lead_c = other.leading_term()
        rem = dict(self._terms)
        quot: dict[Exponent, Fraction] = {}
        while rem:
            e, c = max(rem.items(), key=lambda kv: grlex_key(kv[0]))
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                raise ValueError("polynomial division is not exact")
            q = c / lead_c
            quot[shift] = q
            for oe, oc in other._terms.items():
                te = tuple(a + b for a, b in zip(oe, shift))
                v = rem.get(te, 0) - q * oc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return RationalPoly._raw(self._vars, quot)

    # calculus and substitution ---------------------------------------------

    def diff(self, name: str) -> "RationalPoly":
        i = self._index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return RationalPoly._raw(self._vars, out)

    def gradient(self) -> list["RationalPoly"]:
        return [self.diff(v) for v in self._vars]

    def __call__(self, *point: Scalar) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        if len(point) != len(self._vars):
            raise ValueError(f"expected {len(self._vars)} coordinates, got {len(point)}")
        pt = [as_rat(p) for p in point]
        total = Fraction(0)
        for e, c in self._terms.items():
            term = c
            for p, k in zip(pt, e):
                if k:
                    term *= p ** k
            total += term
        return total

    def substitute(self, images: Mapping[str, "RationalPoly | Scalar"], variables: Sequence[str] | None = None) -> "RationalPoly":
        """Replace variables by polynomials over ``variables``.

        Variables absent from ``images`` are kept (they must exist in the
        target variable list).
        """
        target = tuple(variables) if variables is not None else self._vars
        ims: list[RationalPoly] = []
        for v in self._vars:
            if v in images:
                im = images[v]
                if isinstance(im, RationalPoly):
                    if im._vars != target:
                        im = im.with_variables(target)
                else:
                    im = RationalPoly.constant(target, as_rat(im))
            else:
                im = RationalPoly.var(target, v)
            ims.append(im)
        cache: list[dict[int, RationalPoly]] = [{} for _ in ims]

        def power(i: int, k: int) -> RationalPoly:
            if k not in cache[i]:
                cache[i][k] = ims[i] ** k
            return cache[i][k]

        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            term = RationalPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            for te, tc in term._terms.items():
                out[te] = out.get(te, 0) + tc
        return RationalPoly._raw(target, {e: c for e, c in out.items() if c})

    def linear_change(self, matrix: Sequence[Sequence[Scalar]]) -> "RationalPoly":
        """Return ``f(M y)``: variable i is replaced by sum_j M[i][j] * y_j."""
        n = len(self._vars)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError("linear change must be a square matrix of size #variables")
        gens = RationalPoly.gens(self._vars)
        images = {}
        for i, v in enumerate(self._vars):
            im = RationalPoly.zero(self._vars)
            for j, m in enumerate(matrix[i]):
                if m:
                    im = im + gens[j] * as_rat(m)
            images[v] = im
        return self.substitute(images)

    def with_variables(self, variables: Sequence[str]) -> "RationalPoly":
        """Re-express over another variable list containing every used variable."""
        variables = tuple(variables)
        if variables == self._vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(variables)
            for v, k in zip(self._vars, e):
                if k:
                    if v not in pos:
                        raise ValueError(f"variable {v!r} is used but missing from {variables}")
                    ne[pos[v]] = k
            out[tuple(ne)] = c
        return RationalPoly._raw(variables, out)

    def drop_variables(self, names: Iterable[str]) -> "RationalPoly":
        names = set(names)
        return self.with_variables([v for v in self._vars if v not in names])

    def coefficients_in(self, name: str) -> list["RationalPoly"]:
        """Coefficients of powers of ``name`` as polynomials in the other variables.

        Index k of the result holds the coefficient of ``name**k``.
        """
        i = self._index(name)
        rest = self._vars[:i] + self._vars[i + 1:]
        buckets: dict[int, dict[Exponent, Fraction]] = {}
        for e, c in self._terms.items():
            buckets.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        deg = max(buckets, default=-1)
        return [RationalPoly._raw(rest, buckets.get(k, {})) for k in range(deg + 1)]

    def dehomogenize(self, name: str, value: Scalar = 1) -> "RationalPoly":
        """Set ``name`` to a constant and drop it from the variable list."""
        i = self._index(name)
        rest = self._vars[:i] + self._vars[i + 1:]
        value = as_rat(value)
        out: dict[Exponent, Fraction] = {}
        for e, c in self._terms.items():
            ne = e[:i] + e[i + 1:]
            out[ne] = out.get(ne, 0) + c * value ** e[i]
        return RationalPoly._raw(rest, {e: c for e, c in out.items() if c})

    def translate(self, point: Sequence[Scalar]) -> "RationalPoly":
        """Return ``f(x + point)`` so that ``point`` moves to the origin."""
        gens = RationalPoly.gens(self._vars)
        return self.substitute({v: g + as_rat(p) for v, g, p in zip(self._vars, gens, point)})

    def content_normalized(self) -> "RationalPoly":
        """Scale so the leading coefficient is 1."""
        if self.is_zero():
            return self
        return self * (1 / self.leading_term()[1])

    # text format -------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"RationalPoly({list(self._vars)!r}, {format_poly(self)!r})"


# ---------------------------------------------------------------------------
# text and structured formats

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")
_NUMBER_RE = re.compile(r"^\d+(?:/\d+)?$")
_VAR_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class PolyParseError(ValueError):
    pass


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def parse_poly(text: str, variables: Sequence[str] | None = None) -> RationalPoly:
    """Parse ``-7/16*x0^2*x2 + x1^3 - 2`` style text.

    Without an explicit variable list the variables are the names that
    occur, in natural order (``x2`` before ``x10``).
    """
    src = text.replace(" ", "").replace("\n", "").replace("\t", "").replace("**", "^")
    if not src:
        raise PolyParseError("empty polynomial text")
    if variables is None:
        found = {m.group(0) for m in _VAR_NAME_RE.finditer(src)}
        variables = sorted(found, key=_natural_key)
    variables = tuple(variables)
    index = {v: i for i, v in enumerate(variables)}
    terms: dict[Exponent, Fraction] = {}
    pos = 0
    for m in _TERM_RE.finditer(src):
        if m.start() != pos:
            raise PolyParseError(f"unexpected text at offset {pos}: {src[pos:]!r}")
        pos = m.end()
        sign, body = m.group(1), m.group(2)
        coeff = Fraction(-1 if sign == "-" else 1)
        exp = [0] * len(variables)
        for factor in body.split("*"):
            if not factor:
                raise PolyParseError(f"empty factor in term {body!r}")
            if _NUMBER_RE.match(factor):
                coeff *= Fraction(factor)
                continue
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise PolyParseError(f"cannot parse factor {factor!r}")
            name, power = fm.group(1), int(fm.group(2) or 1)
            if name not in index:
                raise PolyParseError(f"variable {name!r} not in {variables}")
            exp[index[name]] += power
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + coeff
    if pos != len(src):
        raise PolyParseError(f"trailing text {src[pos:]!r}")
    return RationalPoly(variables, terms)


def format_poly(p: RationalPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.items():
        mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(p.variables, e) if k)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_to_dict(p: RationalPoly) -> dict:
    return {"vars": list(p.variables), "terms": [[str(c), list(e)] for e, c in p.items()]}


def poly_from_dict(data: Mapping) -> RationalPoly:
    try:
        variables = data["vars"]
        raw_terms = data["terms"]
    except KeyError as exc:
        raise PolyParseError(f"structured polynomial missing field {exc}") from None
    terms: dict[Exponent, Fraction] = {}
    for item in raw_terms:
        coeff, exp = item
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + Fraction(coeff)
    return RationalPoly(variables, terms)


def dumps_poly(p: RationalPoly) -> str:
    return json.dumps(poly_to_dict(p), indent=1)


def loads_poly(text: str, variables: Sequence[str] | None = None) -> RationalPoly:
    """Read either the structured JSON form or the plain text form."""
    stripped = text.strip()
    if stripped.startswith("{"):
        p = poly_from_dict(json.loads(stripped))
        return p.with_variables(variables) if variables is not None else p
    lines = [ln.split("#", 1)[0] for ln in stripped.splitlines()]
    return parse_poly(" ".join(ln for ln in lines if ln.strip()), variables)
