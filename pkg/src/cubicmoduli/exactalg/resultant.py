"""Resultants and squarefree decomposition of binary forms."""

from __future__ import annotations

from fractions import Fraction

from .matrix import _cofactor_det, bareiss_det
from .polynomial import RationalPoly

UPoly = list[Fraction]  # coefficients, index = power


def resultant(p: RationalPoly, q: RationalPoly, var: str) -> RationalPoly:
    """Sylvester resultant of ``p`` and ``q`` eliminating ``var``.

    The result lives in the remaining variables, in their original order.
    """
    if p.variables != q.variables:
        raise ValueError("resultant operands must share a variable list")
    if var not in p.variables:
        raise ValueError(f"variable {var!r} is not in {p.variables}")
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    m, n = p.degree_in(var), q.degree_in(var)
    if m == 0 and n == 0:
        raise ValueError(f"neither operand involves {var!r}")
    pc = p.coefficients_in(var)
    qc = q.coefficients_in(var)
    if n == 0:
        return qc[0] ** m
    if m == 0:
        return pc[0] ** n
    rest = pc[0].variables
    zero = RationalPoly.zero(rest)
    size = m + n
    rows = []
    # highest power first in each row
    for i in range(n):
        row = [zero] * size
        for k in range(m + 1):
            row[i + (m - k)] = pc[k]
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        for k in range(n + 1):
            row[i + (n - k)] = qc[k]
        rows.append(row)
    if size <= 4:
        return _cofactor_det(rows)
    return bareiss_det(rows)


# ---------------------------------------------------------------------------
# dense univariate helpers over Q


def _trim(a: UPoly) -> UPoly:
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def u_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = _trim(r)
    return _trim(q), r


def u_monic(a: UPoly) -> UPoly:
    a = _trim(a)
    if not a:
        return a
    lc = a[-1]
    return [c / lc for c in a]


def u_gcd(a: UPoly, b: UPoly) -> UPoly:
    a, b = _trim(a), _trim(b)
    while b:
        _, r = u_divmod(a, b)
        a, b = b, r
    return u_monic(a)


def u_deriv(a: UPoly) -> UPoly:
    return _trim([i * c for i, c in enumerate(a)][1:])


def u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def u_pow(a: UPoly, k: int) -> UPoly:
    out: UPoly = [Fraction(1)]
    for _ in range(k):
        out = u_mul(out, a)
    return out


def yun_squarefree(a: UPoly) -> tuple[Fraction, list[UPoly]]:
    """Yun's algorithm: ``a = lc * prod(f_i ** i)`` with ``f_i`` monic squarefree.

    Returns ``(lc, [f_1, f_2, ...])``.
    """
    a = _trim(a)
    if not a:
        raise ValueError("squarefree decomposition of zero")
    lc = a[-1]
    a = u_monic(a)
    if len(a) == 1:
        return lc, []
    factors: list[UPoly] = []
    b = u_gcd(a, u_deriv(a))
    c, _ = u_divmod(a, b)
    d, _ = u_divmod(u_deriv(a), b)
    d = [x - y for x, y in _pad(d, u_deriv(c))]
    while len(_trim(c)) > 1:
        g = u_gcd(c, d)
        factors.append(g)
        c, _ = u_divmod(c, g)
        d, _ = u_divmod(d, g)
        d = [x - y for x, y in _pad(d, u_deriv(c))]
    while factors and len(factors[-1]) == 1:
        factors.pop()
    return lc, factors


def _pad(a: UPoly, b: UPoly) -> list[tuple[Fraction, Fraction]]:
    n = max(len(a), len(b))
    return list(zip(list(a) + [Fraction(0)] * (n - len(a)), list(b) + [Fraction(0)] * (n - len(b))))


# ---------------------------------------------------------------------------
# binary forms


def _binary_vars(b: RationalPoly) -> tuple[str, str]:
    if len(b.variables) != 2:
        raise ValueError(f"expected a binary form, got variables {b.variables}")
    if not b.is_homogeneous():
        raise ValueError("binary form must be homogeneous")
    return b.variables


def _to_upoly(b: RationalPoly) -> UPoly:
    """Coefficients of b(x, 1) indexed by the power of x."""
    d = b.degree()
    out = [Fraction(0)] * (d + 1)
    for (i, _j), c in b.items():
        out[i] = c
    return _trim(out)


def _homogenize(a: UPoly, degree: int, variables: tuple[str, str]) -> RationalPoly:
    return RationalPoly(variables, {(i, degree - i): c for i, c in enumerate(a) if c})


def square_part(b: RationalPoly) -> tuple[RationalPoly, RationalPoly]:
    """Split a binary form as ``b = g**2 * r`` with ``r`` squarefree.

    ``b`` is a square up to a scalar exactly when ``r`` is a constant.
    """
    if b.is_zero():
        raise ValueError("square_part of the zero form")
    variables = _binary_vars(b)
    if b.degree() == 0:
        return RationalPoly.constant(variables, 1), b
    y_power = min(e[1] for e in b.terms)
    reduced = RationalPoly(variables, {(e[0], e[1] - y_power): c for e, c in b.items()})
    u = _to_upoly(reduced)
    lc, factors = yun_squarefree(u)
    g_u: UPoly = [Fraction(1)]
    r_u: UPoly = [lc]
    for i, f in enumerate(factors, start=1):
        g_u = u_mul(g_u, u_pow(f, i // 2))
        if i % 2:
            r_u = u_mul(r_u, f)
    y = RationalPoly.var(variables, variables[1])
    g = _homogenize(g_u, len(g_u) - 1, variables) * y ** (y_power // 2)
    r = _homogenize(r_u, len(r_u) - 1, variables) * y ** (y_power % 2)
    assert g * g * r == b, "squarefree decomposition failed to reassemble"
    return g, r


def binary_discriminant_nonzero(b: RationalPoly) -> bool:
    """True when the binary form has deg(b) distinct roots in P^1."""
    _, r = square_part(b)
    return r.degree() == b.degree()
