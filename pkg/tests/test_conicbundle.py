from __future__ import annotations

import dataclasses
import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicmoduli.conicbundle import (
    DegenerateLineError,
    LineNotContainedError,
    LineOfSecondTypeError,
    decompose_along_line,
    discriminant_labels,
    discriminant_pair,
    irreducible_by_bezout,
    local_normal_form,
    matrices,
    normal_form_frame,
    singular_points_complete,
    tangency_certificate,
)
from cubicmoduli.exactalg import RationalPoly, parse_poly, poly_det
from cubicmoduli.golden import PLANE_POINT, VARS, accept, f_ab, load_golden, search
from cubicmoduli.singclass import classify_singularity, find_singular_points, milnor_number

PLANE = ("x2", "x3", "x4")


def cubic(text):
    return parse_poly(text, VARS)


def plane(text):
    return parse_poly(text, PLANE)


@pytest.fixture(scope="module")
def golden_data():
    return {kind: discriminant_pair(decompose_along_line(load_golden(kind))) for kind in ("smooth", "A1", "A2")}


def test_decompose_block_read_off():
    dec = decompose_along_line(cubic("x0^2*x2 + x1^2*x3 + x4^3"))
    assert (dec.l1, dec.l2, dec.l3) == (plane("x2"), plane("0"), plane("x3"))
    assert dec.q1.is_zero() and dec.q2.is_zero()
    assert dec.f == plane("x4^3")


def test_decompose_f_ab():
    a, b = Fraction(3), Fraction(-2)
    dec = decompose_along_line(f_ab(a, b))
    assert dec.l1.is_zero() and dec.l2.is_zero()
    assert dec.l3 == plane("x4")
    assert dec.q1 == plane("1/2*x3^2 - 1/2*x2*x4")
    assert dec.q2 == plane("x2*x3") * (b / 2)
    assert dec.f == plane("x2^3") * a


def test_line_not_contained_reports_monomials():
    with pytest.raises(LineNotContainedError) as err:
        decompose_along_line(cubic("x0^3 + x0*x1^2 + x2^3"))
    assert set(err.value.monomials) == {"x0^3", "x0*x1^2"}


admissible = [e for e in
              ((a, b, c, d, e) for a in range(4) for b in range(4) for c in range(4) for d in range(4) for e in range(4))
              if sum(e) == 3 and e[0] + e[1] < 3]


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(st.sampled_from(admissible), st.integers(-3, 3).filter(bool), min_size=1, max_size=10))
def test_reassembly_and_determinants(terms):
    f = RationalPoly(VARS, terms)
    dec = decompose_along_line(f)
    assert dec.reassemble() == f
    a, b = matrices(dec)
    assert a.is_symmetric() and b.is_symmetric()
    try:
        data = discriminant_pair(dec)
    except DegenerateLineError:
        return
    assert data.D == poly_det(a) and data.Q == poly_det(b)
    assert data.D.degree() == 5 and data.Q.degree() == 2


@pytest.mark.parametrize("kind, expected", [("smooth", []), ("A1", ["A1"]), ("A2", ["A2"])])
def test_golden_pipeline(golden_data, kind, expected):
    data = golden_data[kind]
    assert data.D.degree() == 5 and data.Q.degree() == 2
    assert data.nonspecial.q_smooth and data.nonspecial.q_misses_sing_d
    reports = discriminant_labels(data)
    x = load_golden(kind)
    x_labels = sorted(classify_singularity(x, p).label for p in find_singular_points(x))
    assert sorted(r.label for r in reports) == x_labels == expected
    assert singular_points_complete(data.D, reports)
    assert irreducible_by_bezout(data, reports)
    cert = tangency_certificate(data, random.Random(0))
    assert cert.verdict == "perfect-square"
    assert cert.g.degree() == 5 and cert.resultant_form.degree() == 10


@pytest.mark.parametrize("seed", range(5))
def test_perturbed_quintic_is_not_tangent(golden_data, seed):
    data = golden_data["smooth"]
    rng = random.Random(seed)
    noise = RationalPoly(PLANE, {e: rng.choice([-2, -1, 1, 2]) for e in [(5, 0, 0), (1, 2, 2), (0, 1, 4)]})
    bad = dataclasses.replace(data, D=data.D + noise)
    assert tangency_certificate(bad, rng).verdict == "not-tangent"


def test_golden_files_are_reproduced_by_the_seeded_search():
    for kind in ("smooth", "A1", "A2"):
        assert accept(kind, load_golden(kind)) is not None
    hit = search("A2", seed=1)
    assert hit.cubic == load_golden("A2")


def test_plane_through_the_line_makes_q_singular():
    # X contains the plane x3 = x4 = 0, which contains the line
    f = cubic("x0^2*x3 + x0*x1*x4 + x1^2*x3 - x1^2*x4 + x0*x2*x3 + x1*x2*x4 + x2^2*x3 + x3^3 + x4^3 + x2*x3*x4")
    data = discriminant_pair(decompose_along_line(f))
    assert not data.nonspecial.q_smooth
    assert not data.nonspecial.nonspecial


def test_line_through_a_singular_point_gives_q_identically_zero():
    # the A5 point e0 of F_{A,B} lies on the line: l1 = l2 = 0
    with pytest.raises(DegenerateLineError):
        discriminant_pair(decompose_along_line(f_ab(1, 3)))


def test_normal_form_on_the_a2_instance(golden_data):
    data = golden_data["A2"]
    nf = normal_form_frame(data, PLANE_POINT)
    assert nf.order == milnor_number(data.D, PLANE_POINT) + 3 == 5
    assert nf.residuals_vanish
    c = local_normal_form(data, PLANE_POINT)
    assert milnor_number(c.to_poly()) == 2
    assert classify_singularity(c.to_poly(), (0, 0)).label == "A2"


@pytest.mark.parametrize("order", [3, 6, 8])
def test_normal_form_residuals_vanish_at_every_order(golden_data, order):
    nf = normal_form_frame(golden_data["A2"], PLANE_POINT, order)
    assert nf.order == order and nf.residuals_vanish
    zero_half = [nf.conjugated[0][0], nf.conjugated[1][1], nf.conjugated[0][2], nf.conjugated[1][2]]
    assert all(s.is_zero() for s in zero_half)
    assert (nf.conjugated[0][1] - Fraction(1, 2)).is_zero()


def test_normal_form_needs_q_nonzero(golden_data):
    data = golden_data["smooth"]
    q = data.Q
    pts = [p for p in itertools.product(range(-3, 4), repeat=3) if any(p) and q.evaluate(p) == 0]
    assert pts, "the golden conic has a small rational point"
    with pytest.raises(LineOfSecondTypeError):
        normal_form_frame(data, pts[0])

