from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from cubicmoduli.lattices import borcherds_arithmetic, canonical_from_form, quotient_divisor
from cubicmoduli.picard import (
    BASES,
    DivisorClass,
    LedgerError,
    LedgerInconsistencyError,
    NoProportionalityError,
    all_classes,
    blowup_pullback,
    ledger_cubic,
    ledger_genus3,
    pullback_modexc,
    reflection_multiplicity,
    reflection_multiplicity_check,
    solve_alpha,
    solve_alpha_composite,
)

F = Fraction
LED = ledger_cubic()

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def classes(ledger):
    return st.lists(rationals, min_size=len(BASES[ledger]), max_size=len(BASES[ledger])).map(
        lambda cs: DivisorClass(ledger, tuple(cs)))


def test_refined_ledger_entries():
    assert LED["L0_refined"].coords == (1, 22, 6, 0, 0, 0, 0)
    assert LED["L2_refined"].coords == (F(1, 8), F(2, 8), F(4, 8), 0, 0, 0, 0)
    assert LED["K_refined"].coords == (F(-7, 16), F(19, 8), F(-42, 16), 0, 0, 0, 0)
    assert LED["K_git"] == DivisorClass("git", (F(-7, 16),))


def test_every_class_has_a_derivation():
    for name, cls, why in all_classes(LED):
        assert why and cls.ledger in BASES
    with pytest.raises(LedgerError):
        type(LED)({"x": LED["K"]}, {})


@pytest.mark.parametrize("name, alpha, beta", [
    ("L0", F(6, 11), F(19, 176)), ("L1", F(17, 28), F(19, 112)), ("L2", F(13, 8), F(19, 2)),
])
def test_alpha_modulo_exceptional(name, alpha, beta):
    p = solve_alpha(LED["K"], LED[name], "D_A1")
    assert (p.alpha, p.beta) == (alpha, beta)
    assert LED["K"] + DivisorClass.unit("modexc", "D_A1") * alpha == LED[name] * beta


@pytest.mark.parametrize("name, alpha, beta", [("L0", F(6, 11), F(19, 176)), ("L1", F(17, 28), F(19, 112))])
def test_alpha_composite_refined(name, alpha, beta):
    p = solve_alpha_composite(LED["K_refined"], LED[f"{name}_refined"])
    assert (p.alpha, p.beta) == (alpha, beta)
    q = solve_alpha_composite(LED["K_refined"], LED[f"{name}_refined"], {"D_A1": 1, "D_A2": 6})
    assert q == p


def test_refined_hodge_class_is_checked_on_the_projection():
    with pytest.raises(NoProportionalityError):
        solve_alpha_composite(LED["K_refined"], LED["L2_refined"])
    K = LED["K_refined"].project("modexc")
    L = LED["L2_refined"].project("modexc")
    assert solve_alpha(K, L, "D_A1").alpha == F(13, 8)


def test_trivial_proportionalities():
    K = LED["K"]
    p = solve_alpha(K, K, "D_A1")
    assert (p.alpha, p.beta) == (0, 1)
    assert solve_alpha_composite(LED["K_refined"], LED["K_refined"]).alpha == 0
    with pytest.raises(LedgerError):
        solve_alpha(K, DivisorClass.zero("modexc"), "D_A1")
    with pytest.raises(NoProportionalityError):
        solve_alpha(DivisorClass.of("modexc", H=1), DivisorClass.of("modexc", D_A1=1), "D_A1")


def test_blowup_pullback_rules():
    assert blowup_pullback(LED["L1'"]) == LED["L1_refined"]
    assert blowup_pullback(LED["K'"]) == LED["K_refined"]
    assert blowup_pullback(LED["L0'"]) == LED["L0_refined"]
    assert blowup_pullback(DivisorClass.zero("hat")).is_zero()
    with pytest.raises(LedgerError):
        blowup_pullback(LED["K"])
    assert pullback_modexc(LED["K'"]) == LED["K"]


def test_automorphic_chain_reaches_the_ledger():
    led = borcherds_arithmetic()
    assert blowup_pullback(quotient_divisor(led)) == LED["L1_refined"]
    assert blowup_pullback(canonical_from_form(led)) == LED["K_refined"]
    assert pullback_modexc(canonical_from_form(led)) == LED["K"]


def test_reflection_multiplicity():
    assert reflection_multiplicity_check() == 6
    assert reflection_multiplicity().upstairs == 12
    assert reflection_multiplicity_check(reflection_order=1, expected=None) == 2
    assert reflection_multiplicity_check(hyperplanes=1, reflection_order=3, stabilizer=1, expected=None) == 3
    with pytest.raises(LedgerInconsistencyError):
        reflection_multiplicity_check(stabilizer=1)


def test_genus3_ledger():
    g3 = ledger_genus3()
    assert g3["L1'"] == DivisorClass.of("hat-g3", Sigma_p=1, H_p=5)
    assert g3["K'"] == DivisorClass.of("hat-g3", Sigma_p=F(-5, 9), H_p=F(2, 9))
    assert g3.annotations == {"alpha(GIT)": "17/28", "alpha(ball)": "7/10", "alpha(Jacobian)": "2"}


def test_ledgers_do_not_mix():
    with pytest.raises(LedgerError):
        LED["K"] + LED["K_refined"]
    with pytest.raises(LedgerError):
        LED["L1'"] - ledger_genus3()["L1'"]
    with pytest.raises(LedgerError):
        DivisorClass.of("modexc", D_A2=1)
    with pytest.raises(LedgerError):
        LED["K"].project("refined")
    with pytest.raises(LedgerError):
        DivisorClass("modexc", (1, 2, 3))


def test_printing():
    assert str(LED["L2_refined"]) == "1/8*D_A1 + 1/4*H + 1/2*D_A2"
    assert str(LED["K"]) == "-7/16*D_A1 + 19/8*H"
    assert str(DivisorClass.zero("hat")) == "0"


@settings(max_examples=100, deadline=None)
@given(classes("refined"), classes("refined"), classes("refined"), rationals, rationals)
def test_vector_space_laws(a, b, c, s, t):
    zero = DivisorClass.zero("refined")
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert a + zero == a and a - a == zero
    assert (a + b) * s == a * s + b * s
    assert a * (s + t) == a * s + a * t
    assert (a * s) * t == a * (s * t)
    assert -a == a * -1


@settings(max_examples=100, deadline=None)
@given(classes("modexc"), rationals, st.fractions(min_value=F(1, 10), max_value=10, max_denominator=10),
       st.sampled_from(BASES["modexc"]))
def test_solve_alpha_round_trip(K, alpha, beta, name):
    e = DivisorClass.unit("modexc", name)
    L = (K + e * alpha) / beta
    other = [n for n in BASES["modexc"] if n != name][0]
    assume(K[other] != 0)  # otherwise L is parallel to e and beta is undetermined
    p = solve_alpha(K, L, name)
    assert (p.alpha, p.beta) == (alpha, beta)
