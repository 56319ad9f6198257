from __future__ import annotations

import itertools
import time
from fractions import Fraction

import pytest

from cubicmoduli.lattices import (
    AutomorphicLedger,
    LatticeError,
    RootLattice,
    borcherds_arithmetic,
    canonical_from_form,
    cartan_matrix,
    coordinate_bounds,
    direct_sum,
    enumerate_roots,
    enumerate_vectors,
    form_divisor,
    genus3_ledger,
    quotient_divisor,
    root_count,
)
from cubicmoduli.picard import DivisorClass

CLASSICAL = {"A1": 2, "A2": 6, "A3": 12, "A4": 20, "D4": 24, "D5": 40, "E6": 72, "E7": 126, "E8": 240}


def box_roots(L: RootLattice) -> int:
    """Brute force over the whole coordinate box."""
    bounds = coordinate_bounds(L)
    ranges = [range(-b, b + 1) for b in bounds]
    return sum(1 for v in itertools.product(*ranges) if L.norm(v) == 2)


@pytest.mark.parametrize("name, count", CLASSICAL.items())
def test_root_counts(name, count):
    assert root_count(name) == count


@pytest.mark.parametrize("name", ["A1", "A2", "A3", "D4", "A4"])
def test_enumeration_matches_box_oracle(name):
    L = RootLattice.parse(name)
    assert box_roots(L) == enumerate_roots(L).count


def test_e8_against_the_even_coordinate_model():
    half = Fraction(1, 2)
    integral = {v for i, j in itertools.combinations(range(8), 2) for si in (1, -1) for sj in (1, -1)
                for v in [tuple(si if k == i else sj if k == j else 0 for k in range(8))]}
    spinor = {v for v in itertools.product((half, -half), repeat=8) if sum(1 for c in v if c < 0) % 2 == 0}
    assert (len(integral), len(spinor)) == (112, 128)
    assert all(sum(c * c for c in v) == 2 for v in integral | spinor)
    assert len(integral | spinor) == root_count("E8")


def test_roots_have_norm_two_and_come_in_pairs():
    for name in ("A2", "D5", "E6", "E7"):
        enum = enumerate_roots(name)
        vecs = set(enum.vectors)
        assert all(enum.lattice.norm(v) == 2 for v in vecs)
        assert {tuple(-c for c in v) for v in vecs} == vecs


def test_e8_is_fast():
    t0 = time.perf_counter()
    assert root_count("E8") == 240
    assert time.perf_counter() - t0 < 5


def test_direct_sum_additivity():
    assert root_count("E6+A2") == 78 == root_count("E6") + root_count("A2")
    assert root_count("A1+A1+A1") == 6
    s = direct_sum(RootLattice.parse("A2"), RootLattice.parse("D4"))
    assert s.rank == 6 and enumerate_roots(s).count == 30


def test_vectors_of_norm_four():
    # norms in A1 are 2n^2, so none equals 4; A2 has six vectors of norm 6
    assert enumerate_vectors(RootLattice.parse("A1"), 4) == []
    assert len(enumerate_vectors(RootLattice.parse("A2"), 6)) == 6


def test_parse_names():
    assert RootLattice.parse("A_2").gram == cartan_matrix("A", 2)
    assert RootLattice.parse("E6 + A2").rank == 8
    with pytest.raises(LatticeError):
        RootLattice.parse("F4")
    with pytest.raises(LatticeError):
        cartan_matrix("D", 3)


def test_bad_gram_matrices():
    with pytest.raises(LatticeError):
        RootLattice("odd", ((1, 0), (0, 2)))
    with pytest.raises(LatticeError):
        RootLattice("indefinite", ((2, 3), (3, 2)))
    with pytest.raises(LatticeError):
        RootLattice("asym", ((2, 1), (0, 2)))
    with pytest.raises(LatticeError):
        enumerate_roots(RootLattice.parse("E8+A1"))


def test_borcherds_arithmetic():
    led = borcherds_arithmetic()
    assert led.form_weight == 48
    assert (led.vanishing["Sigma'"], led.vanishing["H'"]) == (3, 84)
    assert led.root_counts["E6+A2"] == 78
    assert led.ball_dim == 10 and led.ramification == {"Sigma'": 3, "H'": 6}
    assert led.form_weight == led.base_weight + led.root_counts["E6"] // 2


def test_quotient_and_canonical_cubic():
    led = borcherds_arithmetic()
    assert form_divisor(led) == DivisorClass.of("hat", Sigma_p=1, H_p=14)
    assert quotient_divisor(led) == DivisorClass.of("hat", Sigma_p=1, H_p=14)
    assert canonical_from_form(led) == DivisorClass.of("hat", Sigma_p=Fraction(-7, 16), H_p=Fraction(19, 8))


def test_quotient_and_canonical_genus3():
    led = genus3_ledger()
    assert form_divisor(led) == DivisorClass.of("hat-g3", Sigma_p=Fraction(1, 2), H_p=Fraction(5, 2))
    assert quotient_divisor(led) == DivisorClass.of("hat-g3", Sigma_p=1, H_p=5)
    assert canonical_from_form(led) == DivisorClass.of("hat-g3", Sigma_p=Fraction(-5, 9), H_p=Fraction(2, 9))


def test_degenerate_ledgers():
    zero = AutomorphicLedger(12, {}, 10, 48, {"Sigma'": 0, "H'": 0}, {"Sigma'": 3, "H'": 6})
    assert quotient_divisor(zero).is_zero()
    assert canonical_from_form(zero) == DivisorClass.of("hat", Sigma_p=Fraction(-2, 3), H_p=Fraction(-5, 6))
    with pytest.raises(LatticeError):
        canonical_from_form(AutomorphicLedger(12, {}, 10, 0, {"Sigma'": 3, "H'": 84}, {"Sigma'": 3, "H'": 6}))


def test_borcherds_rejects_odd_differences():
    with pytest.raises(LatticeError):
        borcherds_arithmetic({"E6": 72, "E6+A2": 79, "E8": 240})
