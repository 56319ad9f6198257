"""Isolated hypersurface singularities of type A_k (k <= 5) and D_4.

Points are exact: projective points are tuples of Fractions, normalized so
the first nonzero coordinate is 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .exactalg import RationalPoly, SparseEchelon, TruncSeries, nullspace, rank
from .exactalg.resultant import binary_discriminant_nonzero

EXCEEDS_CAP = "exceeds cap"
DEFAULT_CAP = 12
ALLOWABLE = ("A1", "A2", "A3", "A4", "A5", "D4")

Point = tuple[Fraction, ...]
MilnorValue = Union[int, str]


class SingularityError(ValueError):
    pass


class NotSingularError(SingularityError):
    pass


class UnsupportedCorankError(SingularityError):
    pass


@dataclass(frozen=True)
class SingularityReport:
    point: Point
    hessian_corank: int
    milnor_number: MilnorValue
    label: str

    def __post_init__(self):
        if self.label.startswith("A"):
            assert self.milnor_number == int(self.label[1:]) and self.hessian_corank <= 1
        elif self.label == "D4":
            assert self.milnor_number == 4 and self.hessian_corank == 2

    def as_record(self) -> dict:
        return {
            "point": "(" + ":".join(str(c) for c in self.point) + ")",
            "corank": self.hessian_corank,
            "milnor": self.milnor_number,
            "label": self.label,
        }


@dataclass(frozen=True)
class ProjectionReport:
    quadric_rank: int
    curve_C: tuple[RationalPoly, RationalPoly]
    vertex_incidence: bool | None
    deduced_label: str
    vertex: Point | None = None
    curve_milnor: MilnorValue | None = None
    chart: str | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


# ---------------------------------------------------------------------------
# points and charts


def normalize_point(p: Sequence) -> Point:
    p = tuple(Fraction(c) for c in p)
    lead = next((c for c in p if c), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    return tuple(c / lead for c in p)


def _require_homogeneous(f: RationalPoly) -> None:
    if not f.is_homogeneous() or f.is_zero():
        raise SingularityError("expected a nonzero homogeneous polynomial")


def is_singular_at(f: RationalPoly, p: Sequence) -> bool:
    return all(g.evaluate(p) == 0 for g in f.gradient()) and f.evaluate(p) == 0


def find_singular_points(f: RationalPoly, candidates: Iterable[Sequence] | None = None) -> list[Point]:
    """Singular points among the candidates and the {-1, 0, 1} grid.

    This is a search over a finite list, not a solver: singular points with
    other coordinates are found only if passed as candidates.
    """
    _require_homogeneous(f)
    n = len(f.variables)
    grad = f.gradient()
    seen: dict[Point, None] = {}
    pool: list[Sequence] = list(candidates or [])
    pool.extend(itertools.product((0, 1, -1), repeat=n))
    for raw in pool:
        if len(raw) != n:
            raise ValueError(f"candidate {raw} has the wrong number of coordinates")
        if not any(raw):
            continue
        p = normalize_point(raw)
        if p in seen:
            continue
        if all(g.evaluate(p) == 0 for g in grad):
            seen[p] = None
    return list(seen)


def chart_index(p: Sequence) -> int:
    return next(i for i, c in enumerate(p) if c)


def local_germ(f: RationalPoly, p: Sequence) -> RationalPoly:
    """Dehomogenize ``f`` in the chart x_j = p_j (first nonzero j) and move ``p`` to 0.

    The local coordinates keep the names of the remaining variables.
    """
    p = tuple(Fraction(c) for c in p)
    j = chart_index(p)
    rest = [v for i, v in enumerate(f.variables) if i != j]
    gens = {v: RationalPoly.var(rest, v) for v in rest}
    images = {f.variables[j]: p[j]}
    for i, v in enumerate(f.variables):
        if i != j:
            images[v] = gens[v] + p[i]
    return f.substitute(images, variables=rest)


def _resolve_germ(f: RationalPoly, p: Sequence) -> RationalPoly:
    """Local germ at ``p``: projective if ``f`` is homogeneous and p is nonzero."""
    if len(p) != len(f.variables):
        raise ValueError("point dimension does not match the polynomial")
    if f.is_homogeneous() and any(p):
        return local_germ(f, p)
    return f.translate(p)


# ---------------------------------------------------------------------------
# local algebra


def _monomials_below(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(degree):
        for combo in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def colength_profile(gens: Sequence[RationalPoly], top: int) -> list[int]:
    """``[c_0, ..., c_top]`` with ``c_d = dim O / (I + m^d)`` at the origin.

    Uses a single echelon basis of ``{x^a g mod m^top}`` under an order that
    pivots on the lowest-degree monomial; then ``I + m^d`` restricted below
    degree d is spanned by the rows whose pivot has degree < d.
    """
    if not gens:
        raise ValueError("empty ideal")
    variables = gens[0].variables
    n = len(variables)
    monos = _monomials_below(n, top)
    order = {e: i for i, e in enumerate(monos)}
    if any(g.constant_term() for g in gens):
        return [0] * (top + 1)
    ech = SparseEchelon(order)
    for a in monos:
        da = sum(a)
        for g in gens:
            row = {}
            for e, c in g.items():
                if da + sum(e) < top:
                    row[tuple(x + y for x, y in zip(a, e))] = c
            if row:
                ech.add(row)
    pivot_degrees = [0] * (top + 1)
    for piv in ech._rows:
        pivot_degrees[sum(piv)] += 1
    counts_by_degree = [0] * (top + 1)
    for e in monos:
        counts_by_degree[sum(e)] += 1
    profile = [0]
    mono_total = piv_total = 0
    for d in range(top):
        mono_total += counts_by_degree[d]
        piv_total += pivot_degrees[d]
        profile.append(mono_total - piv_total)
    return profile


def local_colength(gens: Sequence[RationalPoly], cap: int = DEFAULT_CAP) -> MilnorValue:
    """Colength of the ideal generated by ``gens`` in the local ring at 0.

    Stops at the first d with ``c_d == c_{d+1}``, which certifies that every
    monomial of degree d lies in the ideal modulo degree d+1, hence (Nakayama)
    that ``m^d`` is inside the ideal and ``c_d`` is the colength.
    """
    top = 4
    while True:
        profile = colength_profile(gens, top)
        for d in range(1, top):
            if profile[d] > cap:
                return EXCEEDS_CAP
            if profile[d] == profile[d + 1]:
                return profile[d]
        if profile[top] > cap:
            return EXCEEDS_CAP
        top += 2


def milnor_number(f: RationalPoly, p: Sequence | None = None, cap: int = DEFAULT_CAP) -> MilnorValue:
    """Milnor number of ``f`` at ``p`` (origin by default).

    For a homogeneous ``f`` and a nonzero ``p`` the point is projective and the
    germ is taken in the chart of its first nonzero coordinate.
    """
    p = tuple(p) if p is not None else (0,) * len(f.variables)
    germ = _resolve_germ(f, p)
    if germ.constant_term() or any(g.constant_term() for g in germ.gradient()):
        raise NotSingularError(f"point {p} is not a singular point")
    return local_colength(germ.gradient(), cap)


def hessian_matrix(germ: RationalPoly) -> list[list[Fraction]]:
    """Hessian at the origin, read off the quadratic part."""
    n = len(germ.variables)
    h = [[Fraction(0)] * n for _ in range(n)]
    for e, c in germ.homogeneous_part(2).items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            h[i][i] = 2 * c
        else:
            h[i][j] = h[j][i] = c
    return h


def _restrict_form(form: RationalPoly, basis: Sequence[Sequence[Fraction]], names: Sequence[str]) -> RationalPoly:
    gens = RationalPoly.gens(names)
    images = {}
    for i, v in enumerate(form.variables):
        im = RationalPoly.zero(names)
        for k, vec in enumerate(basis):
            if vec[i]:
                im = im + gens[k] * vec[i]
        images[v] = im
    return form.substitute(images, variables=names)


def congruence_diagonalize(h: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[Fraction]]:
    """Invertible ``T`` and ``lam`` with ``T^t h T = diag(lam)``.

    Nonzero entries of ``lam`` come first. Columns of ``T`` are the new basis.
    """
    n = len(h)
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def form(u, v):
        return sum((u[i] * h[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j]), Fraction(0))

    lam: list[Fraction] = []
    for k in range(n):
        pivot = next((i for i in range(k, n) if form(basis[i], basis[i])), None)
        if pivot is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if form(basis[i], basis[j])), None)
            if pair is None:
                break
            i, j = pair
            basis[i] = [a + b for a, b in zip(basis[i], basis[j])]
            pivot = i
        basis[k], basis[pivot] = basis[pivot], basis[k]
        d = form(basis[k], basis[k])
        for j in range(k + 1, n):
            c = form(basis[k], basis[j]) / d
            if c:
                basis[j] = [a - c * b for a, b in zip(basis[j], basis[k])]
        lam.append(d)
    lam += [Fraction(0)] * (n - len(lam))
    t = [[basis[j][i] for j in range(n)] for i in range(n)]
    return t, lam


def _compose(poly: RationalPoly, images: Sequence[TruncSeries]) -> TruncSeries:
    """``poly(images)`` computed with truncation at every product."""
    var0 = images[0]
    out = TruncSeries(var0.variables, var0.order)
    powers: list[dict[int, TruncSeries]] = [{0: TruncSeries.constant(var0.variables, var0.order, 1)} for _ in images]

    def power(i: int, k: int) -> TruncSeries:
        cache = powers[i]
        if k not in cache:
            cache[k] = power(i, k - 1) * images[i]
        return cache[k]

    for e, c in poly.items():
        term = TruncSeries.constant(var0.variables, var0.order, c)
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        out = out + term
    return out


def splitting_residual(germ: RationalPoly, order: int) -> RationalPoly:
    """Residual germ of the splitting lemma, exact through degree ``2*order - 1``.

    Writes ``germ(T z) = sum lam_i y_i^2 / 2 + (terms of degree >= 3)`` with
    ``y`` the nondegenerate directions and ``x`` the Hessian kernel, solves
    ``d/dy germ = 0`` for ``y = phi(x)`` modulo degree ``order`` by fixed-point
    iteration and returns ``germ(phi(x), x)``, a germ in the kernel variables
    only. Its Milnor number equals the Milnor number of ``germ``. An error of
    degree >= order in ``phi`` moves the residual only in degree >= 2*order
    because the y-gradient vanishes along ``phi``.
    """
    t, lam = congruence_diagonalize(hessian_matrix(germ))
    h = germ.linear_change(t)
    r = sum(1 for c in lam if c)
    ys, xs = h.variables[:r], h.variables[r:]
    if not xs:
        return RationalPoly.zero(())
    wide = 2 * order
    xgens = [TruncSeries.from_poly(RationalPoly.var(xs, v), order) for v in xs]
    partials = [h.diff(v) for v in ys]
    phi = [TruncSeries(xs, order) for _ in ys]
    for _ in range(order):
        new = [(_compose(dv, phi + xgens) - y * lv) * (-1 / lv) for dv, lv, y in zip(partials, lam, phi)]
        if new == phi:
            break
        phi = new
    lifted = [TruncSeries(xs, wide, s.terms) for s in phi]
    xwide = [TruncSeries.from_poly(RationalPoly.var(xs, v), wide) for v in xs]
    return _compose(h, lifted + xwide).to_poly()


def _residual_milnor(germ: RationalPoly, corank: int, cap: int) -> MilnorValue:
    if corank == 0:
        return 1
    order = 4 if corank == 1 else 3
    while True:
        res = splitting_residual(germ, order)
        exact_below = 2 * order
        if corank == 1:
            if not res.is_zero():
                mu = min(sum(e) for e in res.terms) - 1
                return mu if mu <= cap else EXCEEDS_CAP
        else:
            top = exact_below - 1
            grads = res.gradient()
            if any(not g.is_zero() for g in grads):
                profile = colength_profile(grads, top)
                for d in range(1, top):
                    if profile[d] > cap:
                        return EXCEEDS_CAP
                    if profile[d] == profile[d + 1]:
                        return profile[d]
        if exact_below > cap + 1:
            return EXCEEDS_CAP
        order += 2


def classify_singularity(f: RationalPoly, p: Sequence, cap: int = DEFAULT_CAP, method: str = "split") -> SingularityReport:
    """ADE label from Hessian corank, Milnor number and the 3-jet on the kernel.

    ``method="split"`` computes the Milnor number on the splitting-lemma
    residual (fast); ``method="direct"`` uses the full Jacobian colength.
    """
    if method not in ("split", "direct"):
        raise ValueError(f"unknown method {method!r}")
    p = tuple(Fraction(c) for c in p)
    germ = _resolve_germ(f, p)
    point = normalize_point(p) if f.is_homogeneous() and any(p) else p
    if germ.constant_term():
        raise NotSingularError(f"point {p} does not lie on the hypersurface")
    if any(g.constant_term() for g in germ.gradient()):
        return SingularityReport(point, 0, 0, "smooth-point")
    n = len(germ.variables)
    hess = hessian_matrix(germ)
    corank = n - rank(hess)
    if method == "split":
        mu = _residual_milnor(germ, corank, cap)
    else:
        mu = local_colength(germ.gradient(), cap)
    if mu == EXCEEDS_CAP:
        return SingularityReport(point, corank, mu, "unclassified")
    if corank <= 1:
        label = f"A{mu}" if 1 <= mu <= 5 else "unclassified"
        return SingularityReport(point, corank, mu, label)
    if corank == 2 and mu == 4:
        kernel = nullspace(hess)
        cubic = _restrict_form(germ.homogeneous_part(3), kernel, ("s", "t"))
        if cubic.degree() == 3 and binary_discriminant_nonzero(cubic):
            return SingularityReport(point, corank, mu, "D4")
    return SingularityReport(point, corank, mu, "unclassified")


# ---------------------------------------------------------------------------
# projection from a singular point


def split_at_point(f: RationalPoly, p: Sequence) -> tuple[RationalPoly, RationalPoly, int]:
    """Write ``f(t*p + u) = t*Q2(u) + K3(u)`` for a cubic singular at ``p``.

    ``u`` ranges over the coordinates other than the chart index j of ``p``;
    returns ``(Q2, K3, j)`` as forms in those coordinates.
    """
    p = normalize_point(p)
    j = chart_index(p)
    rest = [v for i, v in enumerate(f.variables) if i != j]
    names = ["_t"] + rest
    gens = {v: RationalPoly.var(names, v) for v in names}
    t = gens["_t"]
    images = {f.variables[j]: t * p[j]}
    for i, v in enumerate(f.variables):
        if i != j:
            images[v] = t * p[i] + gens[v]
    g = f.substitute(images, variables=names)
    by_t = g.coefficients_in("_t")
    by_t += [RationalPoly.zero(rest)] * (4 - len(by_t))
    if not by_t[3].is_zero() or not by_t[2].is_zero():
        raise NotSingularError(f"{p} is not a singular point of the cubic")
    return by_t[1], by_t[0], j


def gram_matrix(quadric: RationalPoly) -> list[list[Fraction]]:
    return hessian_matrix(quadric)


def _kernel_points(matrix) -> list[Point]:
    return [tuple(v) for v in nullspace(matrix)]


def _curve_germ_at_vertex(q2: RationalPoly, k3: RationalPoly, v: Point, cap: int):
    """Milnor number and corank of the curve {Q2 = K3 = 0} at the cone vertex v.

    The curve sits on the cubic surface K3 = 0, smooth at v, so its germ is
    the function Q2 restricted to that surface; the critical ideal is generated
    by K3 and the 2x2 minors of the Jacobian of (K3, Q2).
    """
    vn = normalize_point(v)
    m = chart_index(vn)
    h = local_germ(q2, vn)
    k = local_germ(k3, vn)
    chart = f"{q2.variables[m]}=1"
    grad_k = [g.constant_term() for g in k.gradient()]
    if not any(grad_k):
        return None, None, chart
    dh = h.gradient()
    dk = k.gradient()
    n = len(h.variables)
    minors = [dk[a] * dh[b] - dk[b] * dh[a] for a in range(n) for b in range(a + 1, n)]
    mu = local_colength([k] + minors, cap)
    tangent = nullspace([grad_k])
    hess_restricted = _restrict_form(h.homogeneous_part(2), tangent, ("s", "t"))
    curve_corank = 2 - rank(hessian_matrix(hess_restricted))
    return mu, curve_corank, chart


def project_from_singular_point(f: RationalPoly, p: Sequence, cap: int = DEFAULT_CAP) -> ProjectionReport:
    """Tangent cone quadric Q_p and the (2,3) curve C_p of lines through p."""
    _require_homogeneous(f)
    if f.degree() != 3:
        raise SingularityError("projection analysis needs a cubic")
    q2, k3, _ = split_at_point(f, p)
    gram = gram_matrix(q2)
    qrank = rank(gram)
    curve = (q2, k3)
    if qrank == 4:
        return ProjectionReport(4, curve, None, "A1")
    if qrank == 3:
        (v,) = _kernel_points(gram)
        v = normalize_point(v)
        if k3.evaluate(v) != 0:
            return ProjectionReport(3, curve, False, "A2", vertex=v)
        mu, ccorank, chart = _curve_germ_at_vertex(q2, k3, v, cap)
        if mu is None:
            return ProjectionReport(3, curve, True, "unclassified", vertex=v, chart=chart,
                                    notes=("cubic surface K3 singular at the vertex",))
        label = "unclassified"
        if mu != EXCEEDS_CAP and ccorank <= 1 and mu + 2 <= 5:
            label = f"A{mu + 2}"
        return ProjectionReport(3, curve, True, label, vertex=v, curve_milnor=mu, chart=chart)
    if qrank == 2:
        line = _kernel_points(gram)
        cubic = _restrict_form(k3, line, ("s", "t"))
        distinct = not cubic.is_zero() and cubic.degree() == 3 and binary_discriminant_nonzero(cubic)
        return ProjectionReport(2, curve, None, "D4" if distinct else "unclassified")
    raise UnsupportedCorankError(f"tangent cone quadric has rank {qrank} < 2")


# ---------------------------------------------------------------------------
# global count


def milnor_algebra_dimension(f: RationalPoly, degree: int) -> int:
    """``dim (R / J(f))_degree`` for a form ``f`` with Jacobian ideal ``J(f)``.

    For a form with isolated singularities this equals the total Tjurina
    number of its projective hypersurface once ``degree`` is large; at and
    beyond ``nvars * (deg f - 2) + 1`` it has stabilized. For ADE points
    the Tjurina number equals the Milnor number.
    """
    _require_homogeneous(f)
    n = len(f.variables)
    grads = [g for g in f.gradient() if not g.is_zero()]
    k = degree - (f.degree() - 1)
    monos = [e for e in _monomials_below(n, degree + 1) if sum(e) == degree]
    order = {e: i for i, e in enumerate(monos)}
    if k < 0:
        return len(monos)
    ech = SparseEchelon(order)
    for a in (e for e in _monomials_below(n, k + 1) if sum(e) == k):
        for g in grads:
            ech.add({tuple(x + y for x, y in zip(a, e)): c for e, c in g.items()})
    return len(monos) - len(ech)


def total_tjurina(f: RationalPoly) -> int:
    """Total Tjurina number of ``{f = 0}``, read in the stable range.

    Raises ``SingularityError`` if the two sampled degrees disagree, which
    signals a non-isolated singular locus.
    """
    _require_homogeneous(f)
    start = len(f.variables) * (f.degree() - 2) + 1
    a = milnor_algebra_dimension(f, start)
    b = milnor_algebra_dimension(f, start + 1)
    if a != b:
        raise SingularityError(f"Milnor algebra not stable ({a} != {b}); singular locus is not finite")
    return a
