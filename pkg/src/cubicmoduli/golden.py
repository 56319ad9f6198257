"""Stored example cubics and the seeded search that produced the conic-bundle ones.

Every conic-bundle instance contains the line x2=x3=x4=0. The singular ones
are singular at e4 = (0:0:0:0:1), which projects to (0:0:1) in the plane,
with the x4-coefficient quadric chosen so that -det B = 1 there.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from importlib import resources

from .conicbundle import (
    ConicBundleData,
    ConicBundleError,
    decompose_along_line,
    discriminant_labels,
    discriminant_pair,
    singular_points_complete,
)
from .exactalg import RationalPoly, loads_poly, parse_poly
from .singclass import SingularityError, classify_singularity, total_tjurina

VARS = ("x0", "x1", "x2", "x3", "x4")
SINGULAR_POINT = (0, 0, 0, 0, 1)
PLANE_POINT = (0, 0, 1)
GOLDEN_FILES = {
    "smooth": "golden_smooth.poly",
    "A1": "golden_a1.poly",
    "A2": "golden_a2.poly",
    "fdelta": "fdelta.poly",
    "fab": "fab.poly",
}
_CONE = {"A1": "x0^2 - x1^2 + x2^2 + x3^2", "A2": "x0^2 - x1^2 + x2^2"}
_TAU = {"smooth": 0, "A1": 1, "A2": 2}


@dataclass(frozen=True)
class GoldenHit:
    kind: str
    seed: int
    trial: int
    cubic: RationalPoly
    data: ConicBundleData


def read_text(name: str) -> str:
    return resources.files("cubicmoduli.data").joinpath(name).read_text()


def load_golden(kind: str) -> RationalPoly:
    return loads_poly(read_text(GOLDEN_FILES[kind]), VARS)


def f_ab(a, b) -> RationalPoly:
    """The two-A5 family ``A*x2^3 + x0*x3^2 + x1^2*x4 - x0*x2*x4 + B*x1*x2*x3``."""
    return (parse_poly("x0*x3^2 + x1^2*x4 - x0*x2*x4", VARS)
            + parse_poly("x2^3", VARS) * a + parse_poly("x1*x2*x3", VARS) * b)


def f_delta() -> RationalPoly:
    return parse_poly("x0*x1*x2 + x3^3 + x4^3", VARS)


def _monomials(degree: int, n: int):
    for combo in itertools.combinations_with_replacement(range(n), degree):
        e = [0] * n
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _candidate(kind: str, rng: random.Random, density: float) -> RationalPoly:
    terms = {}
    for e in _monomials(3, 5):
        if e[0] + e[1] == 3:
            continue  # keeps the line inside the cubic
        if kind != "smooth" and e[4] >= 1:
            continue  # x4 enters only through the tangent cone below
        if rng.random() < density:
            terms[e] = rng.choice([-2, -1, 1, 2])
    f = RationalPoly(VARS, terms)
    if kind == "smooth":
        return f
    f = f + parse_poly(_CONE[kind], VARS) * RationalPoly.var(VARS, "x4")
    if kind == "A2":
        # the cone vertex e3 must stay off the cubic K3 so that the point is A2, not A3 or worse
        x3cubed = (0, 0, 0, 3, 0)
        f = f - RationalPoly(VARS, {x3cubed: f.coeff(x3cubed)}) + RationalPoly(VARS, {x3cubed: rng.choice([-2, -1, 1, 2])})
    return f


def accept(kind: str, f: RationalPoly) -> ConicBundleData | None:
    """All checks a golden instance must pass, or None."""
    try:
        if total_tjurina(f) != _TAU[kind]:
            return None
    except SingularityError:
        return None
    if kind != "smooth" and classify_singularity(f, SINGULAR_POINT).label != kind:
        return None
    try:
        data = discriminant_pair(decompose_along_line(f))
    except ConicBundleError:
        return None
    if not data.nonspecial.nonspecial:
        return None
    reports = discriminant_labels(data)
    if not singular_points_complete(data.D, reports):
        return None
    if sorted(r.label for r in reports) != ([] if kind == "smooth" else [kind]):
        return None
    return data


def search(kind: str, seed: int = 1, trials: int = 200, density: float = 0.35) -> GoldenHit:
    """Seeded random search for a verified smooth, one-A1 or one-A2 instance."""
    if kind not in _TAU:
        raise ValueError(f"unknown golden kind {kind!r}")
    rng = random.Random(seed)
    for trial in range(trials):
        f = _candidate(kind, rng, density)
        data = accept(kind, f)
        if data is not None:
            return GoldenHit(kind, seed, trial, f, data)
    raise RuntimeError(f"no {kind} instance in {trials} trials")
