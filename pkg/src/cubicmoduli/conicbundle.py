"""Conic-bundle structure of a cubic threefold projected from a line.

The line is always ``x2 = x3 = x4 = 0`` (the caller normalizes coordinates).
Writing

    F = l1*x0^2 + 2*l2*x0*x1 + l3*x1^2 + 2*q1*x0 + 2*q2*x1 + f

with forms in ``x2, x3, x4`` of degrees 1, 2, 3, the plane conic fibres
degenerate over the quintic ``D = det A`` and the exceptional divisor over
the line branches along the conic ``Q = det B``::

    A = [[l1, l2, q1],      B = [[l1, l2],
         [l2, l3, q2],           [l2, l3]]
         [q1, q2, f ]]

On ``Q = 0`` one has ``l1 * D = -(l1*q2 - l2*q1)**2`` modulo ``Q``, which is
why the two curves are tangent wherever they meet.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .coords import random_invertible
from .exactalg import PolyMatrix, RationalPoly, TruncSeries, poly_det, rank, resultant, square_part
from .exactalg.series import NotInvertibleError, rational_sqrt, series_sqrt
from .singclass import (
    EXCEEDS_CAP,
    SingularityReport,
    classify_singularity,
    find_singular_points,
    gram_matrix,
    local_germ,
    milnor_number,
    normalize_point,
    total_tjurina,
)

PLANE_TAIL = 3  # x2, x3, x4


class ConicBundleError(ValueError):
    pass


class LineNotContainedError(ConicBundleError):
    def __init__(self, monomials: Sequence[str]):
        self.monomials = tuple(monomials)
        super().__init__("cubic does not contain the line x2=x3=x4=0; offending monomials: " + ", ".join(monomials))


class DegenerateLineError(ConicBundleError):
    """D or Q vanishes identically: the line is special."""


class GenericityError(ConicBundleError):
    pass


class LineOfSecondTypeError(ConicBundleError):
    """The conic Q passes through the point, so no normal form exists there."""


@dataclass(frozen=True)
class LineDecomposition:
    l1: RationalPoly
    l2: RationalPoly
    l3: RationalPoly
    q1: RationalPoly
    q2: RationalPoly
    f: RationalPoly
    ambient: tuple[str, ...]

    def __post_init__(self):
        for name, block, deg in (("l1", self.l1, 1), ("l2", self.l2, 1), ("l3", self.l3, 1),
                                 ("q1", self.q1, 2), ("q2", self.q2, 2), ("f", self.f, 3)):
            if not block.is_zero() and (not block.is_homogeneous() or block.degree() != deg):
                raise ConicBundleError(f"block {name} is not a form of degree {deg}")

    @property
    def plane_variables(self) -> tuple[str, ...]:
        return self.l1.variables

    def reassemble(self) -> RationalPoly:
        x0, x1 = (RationalPoly.var(self.ambient, v) for v in self.ambient[:2])
        lift = lambda p: p.with_variables(self.ambient)  # noqa: E731
        return (lift(self.l1) * x0 ** 2 + lift(self.l2) * x0 * x1 * 2 + lift(self.l3) * x1 ** 2
                + lift(self.q1) * x0 * 2 + lift(self.q2) * x1 * 2 + lift(self.f))


@dataclass(frozen=True)
class NonspecialVerdict:
    q_smooth: bool
    q_misses_sing_d: bool
    singular_points_of_d: tuple[tuple[Fraction, ...], ...]

    @property
    def nonspecial(self) -> bool:
        return self.q_smooth and self.q_misses_sing_d


@dataclass(frozen=True)
class ConicBundleData:
    decomposition: LineDecomposition
    A: PolyMatrix
    B: PolyMatrix
    D: RationalPoly
    Q: RationalPoly
    nonspecial: NonspecialVerdict


@dataclass(frozen=True)
class TangencyCertificate:
    tangent: bool
    g: RationalPoly
    r: RationalPoly
    resultant_form: RationalPoly
    change: tuple[tuple[int, ...], ...]
    attempts: int

    @property
    def verdict(self) -> str:
        return "perfect-square" if self.tangent else "not-tangent"


@dataclass(frozen=True)
class NormalFormFrame:
    """Frame ``M`` with ``M^t A M = [[0, 1/2, 0], [1/2, 0, 0], [0, 0, c]]`` near a point."""

    point: tuple[Fraction, ...]
    chart: str
    order: int
    c: TruncSeries
    frame: tuple[tuple[TruncSeries, ...], ...]
    conjugated: tuple[tuple[TruncSeries, ...], ...]
    residuals: tuple[TruncSeries, ...]
    swapped: bool = False
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def residuals_vanish(self) -> bool:
        return all(r.is_zero() for r in self.residuals)


# ---------------------------------------------------------------------------
# decomposition


def decompose_along_line(F: RationalPoly) -> LineDecomposition:
    """Read off the blocks ``l_i, q_j, f`` of a cubic containing ``x2=x3=x4=0``."""
    if len(F.variables) != 5:
        raise ConicBundleError("expected a cubic in five variables")
    if F.is_zero() or not F.is_homogeneous() or F.degree() != 3:
        raise ConicBundleError("expected a nonzero homogeneous cubic")
    ambient = F.variables
    plane = ambient[2:]
    blocks: dict[tuple[int, int], dict] = {}
    bad = []
    for e, c in F.items():
        a, b = e[0], e[1]
        if a + b == 3:
            bad.append(str(RationalPoly.monomial(ambient, e, c)))
            continue
        blocks.setdefault((a, b), {})[e[2:]] = c
    if bad:
        raise LineNotContainedError(bad)

    def block(key, scale=1):
        return RationalPoly(plane, {e: c * scale for e, c in blocks.get(key, {}).items()})

    half = Fraction(1, 2)
    return LineDecomposition(
        l1=block((2, 0)),
        l2=block((1, 1), half),
        l3=block((0, 2)),
        q1=block((1, 0), half),
        q2=block((0, 1), half),
        f=block((0, 0)),
        ambient=ambient,
    )


def matrices(dec: LineDecomposition) -> tuple[PolyMatrix, PolyMatrix]:
    a = PolyMatrix.from_rows([[dec.l1, dec.l2, dec.q1], [dec.l2, dec.l3, dec.q2], [dec.q1, dec.q2, dec.f]])
    b = PolyMatrix.from_rows([[dec.l1, dec.l2], [dec.l2, dec.l3]])
    return a, b


def projected_point(p: Sequence) -> tuple[Fraction, ...]:
    """Image of a point of P^4 off the line under projection to (x2:x3:x4)."""
    tail = tuple(Fraction(c) for c in p[2:])
    if not any(tail):
        raise ConicBundleError(f"point {tuple(p)} lies on the line")
    return normalize_point(tail)


def discriminant_pair(dec: LineDecomposition, candidates: Sequence[Sequence] | None = None) -> ConicBundleData:
    """Quintic ``D = det A``, conic ``Q = det B`` and the non-special verdicts.

    Singular points of ``D`` are searched on the {-1,0,1} grid plus
    ``candidates`` (points of the plane).
    """
    a, b = matrices(dec)
    d = poly_det(a)
    q = poly_det(b)
    if q.is_zero():
        raise DegenerateLineError("Q = det B vanishes identically; the line is special")
    if d.is_zero():
        raise DegenerateLineError("D = det A vanishes identically; the line is special")
    q_smooth = rank(gram_matrix(q)) == 3
    sing = tuple(find_singular_points(d, candidates))
    misses = all(q.evaluate(p) != 0 for p in sing)
    return ConicBundleData(dec, a, b, d, q, NonspecialVerdict(q_smooth, misses, sing))


def discriminant_labels(data: ConicBundleData) -> list[SingularityReport]:
    return [classify_singularity(data.D, p) for p in data.nonspecial.singular_points_of_d]


def singular_points_complete(f: RationalPoly, reports: Sequence[SingularityReport]) -> bool:
    """True when the listed ADE points account for the whole Tjurina count of ``f``.

    ADE germs are quasi-homogeneous, so their Tjurina and Milnor numbers agree.
    """
    if any(r.milnor_number == EXCEEDS_CAP or r.label in ("unclassified", "smooth-point") for r in reports):
        return False
    return total_tjurina(f) == sum(r.milnor_number for r in reports)


def irreducible_by_bezout(data: ConicBundleData, reports: Sequence[SingularityReport]) -> bool:
    """Certify that ``D`` is irreducible from its singularities alone.

    Requires the reports to be the complete singular locus, consisting of a
    single A_k (k <= 5) or D4 point, or no point at all. Two components of
    degrees a + b = 5 meet in a*b >= 4 points counted with multiplicity, all
    singular on D; one A_k point has at most two branches meeting with
    multiplicity at most 3, and a D4 point splits its three smooth branches
    with total intersection at most 2.
    """
    if not singular_points_complete(data.D, reports):
        return False
    return len(reports) <= 1


# ---------------------------------------------------------------------------
# tangency


def tangency_certificate(data: ConicBundleData, rng: random.Random | None = None, retries: int = 20) -> TangencyCertificate:
    """Certify that ``D`` and ``Q`` meet with even multiplicity everywhere.

    After a random coordinate change with ``D`` and ``Q`` monic in the last
    variable, the resultant eliminating it is a binary form of degree 10
    whose roots are the projections of the points of ``D n Q`` with their
    intersection multiplicities. The certificate is that form being a
    perfect square up to a constant.
    """
    rng = rng if rng is not None else random.Random(0)
    d, q = data.D, data.Q
    plane = d.variables
    last = plane[-1]
    for attempt in range(1, retries + 1):
        m = random_invertible(len(plane), rng)
        d2, q2 = d.linear_change(m), q.linear_change(m)
        if d2.coeff((0, 0, 5)) == 0 or q2.coeff((0, 0, 2)) == 0:
            continue
        res = resultant(d2, q2, last)
        if res.is_zero() or res.degree() != 10:
            continue
        g, r = square_part(res)
        return TangencyCertificate(r.degree() == 0, g, r, res, tuple(map(tuple, m)), attempt)
    raise GenericityError(f"no generic projection found in {retries} attempts")


# ---------------------------------------------------------------------------
# local normal form


def _chart_series(p: RationalPoly, point: Sequence[Fraction], order: int) -> TruncSeries:
    return TruncSeries.from_poly(local_germ(p, point), order)


def normal_form_frame(data: ConicBundleData, point: Sequence, order: int | None = None) -> NormalFormFrame:
    """Local frame bringing the conic bundle to ``x0*x1 + c*t^2`` near ``point``.

    ``c = D / q`` is a local equation of the discriminant. The frame is built
    from ``u = B^-1 (q1, q2)``, which splits off the third coordinate, and an
    isotropic basis of ``B`` that needs ``sqrt(-q)``; hence ``-q(point)`` must
    be a nonzero rational square.
    """
    pt = normalize_point(point)
    dec = data.decomposition
    if dec.l1.evaluate(pt) == 0 and dec.l3.evaluate(pt) == 0:
        raise ConicBundleError("l1 and l3 both vanish at the point; change the x0, x1 frame first")
    swapped = dec.l1.evaluate(pt) == 0
    l1, l2, l3, q1, q2 = dec.l1, dec.l2, dec.l3, dec.q1, dec.q2
    if swapped:
        l1, l3, q1, q2 = l3, l1, q2, q1
    qv = data.Q.evaluate(pt)
    if qv == 0:
        raise LineOfSecondTypeError(f"Q vanishes at {pt}")
    if rational_sqrt(-qv) is None:
        raise NotInvertibleError(f"-q = {-qv} at the point is not a rational square")
    if order is None:
        mu = milnor_number(data.D, pt)
        order = (mu if isinstance(mu, int) else 1) + 3
    chart_var = data.D.variables[next(i for i, c in enumerate(pt) if c)]
    s_l1, s_l2, s_l3, s_q1, s_q2, s_f = (_chart_series(p, pt, order) for p in (l1, l2, l3, q1, q2, dec.f))
    s_d = _chart_series(data.D, pt, order)
    q = s_l1 * s_l3 - s_l2 * s_l2
    u1 = (s_l3 * s_q1 - s_l2 * s_q2) / q
    u2 = (s_l1 * s_q2 - s_l2 * s_q1) / q
    root = series_sqrt(-q)
    zero = TruncSeries(q.variables, order)
    one = zero + 1
    # columns: isotropic v1, isotropic v2 scaled so that v1.B.v2 = 1/2, and the splitting vector
    scale = (s_l1 * q * 4).inverse()
    v1 = (root - s_l2, s_l1)
    v2 = ((-s_l2 - root) * scale, s_l1 * scale)
    frame = (
        (v1[0], v2[0], -u1),
        (v1[1], v2[1], -u2),
        (zero, zero, one),
    )
    a = ((s_l1, s_l2, s_q1), (s_l2, s_l3, s_q2), (s_q1, s_q2, s_f))
    conj = _conjugate(frame, a)
    c = conj[2][2]
    half = Fraction(1, 2)
    target = ((zero, zero + half, zero), (zero + half, zero, zero), (zero, zero, c))
    residuals = [conj[i][j] - target[i][j] for i in range(3) for j in range(3)]
    residuals.append(c * q - s_d)
    det_m = _det3(frame)
    residuals.append(det_m * det_m * _det3(a) - _det3(conj))
    residuals.append(_det3(conj) + c * Fraction(1, 4))
    notes = ("x0 and x1 swapped so that l1 is a unit",) if swapped else ()
    return NormalFormFrame(pt, chart_var + "=1", order, c, frame, conj, tuple(residuals), swapped, notes)


def local_normal_form(data: ConicBundleData, point: Sequence, order: int | None = None) -> TruncSeries:
    """The local equation ``c`` of ``D`` at ``point`` from the normal form.

    Raises ``ConicBundleError`` if a conjugation residual survives, which
    cannot happen for valid input.
    """
    nf = normal_form_frame(data, point, order)
    if not nf.residuals_vanish:
        raise ConicBundleError("normal form residuals do not vanish")
    return nf.c


def _conjugate(m, a):
    n = len(a)
    am = [[sum((a[i][k] * m[k][j] for k in range(n)), m[0][0] * 0) for j in range(n)] for i in range(n)]
    return tuple(tuple(sum((m[k][i] * am[k][j] for k in range(n)), m[0][0] * 0) for j in range(n)) for i in range(n))


def _det3(m):
    return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
