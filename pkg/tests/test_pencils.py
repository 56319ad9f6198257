from __future__ import annotations

import itertools
from fractions import Fraction

import pytest

from cubicmoduli import pencils
from cubicmoduli.pencils import (
    BoundaryProfile,
    InsufficientTestCurvesError,
    PencilError,
    TableMismatchError,
    abelian_account,
    binary_discriminant_degree,
    boundary_table,
    canonical_ratio,
    discriminant_degree,
    hyperelliptic_record,
    lambda_audit,
    lambda_generalized_lefschetz,
    lefschetz_record,
    parameter_space_dim,
    prym_audit,
    prym_lambda_a2_pencil,
    solve_l2,
    standard_records,
)
from cubicmoduli.picard import DivisorClass, ledger_cubic

F = Fraction


def test_discriminant_degrees():
    assert discriminant_degree(3, 3) == 80
    assert discriminant_degree(1, 5) == 48
    assert 3 * discriminant_degree(1, 5) - 2 == 142
    assert discriminant_degree(1, 2) == 3
    with pytest.raises(PencilError):
        discriminant_degree(3, 1)
    with pytest.raises(PencilError):
        discriminant_degree(0, 3)


def test_parameter_space():
    assert parameter_space_dim(3, 3) == 35
    assert parameter_space_dim(1, 5) == 21
    assert canonical_ratio(3, 3) == F(7, 16)
    assert discriminant_degree(3, 3) * F(7, 16) == parameter_space_dim(3, 3)
    assert binary_discriminant_degree(12) == 22


def test_lefschetz_record():
    r = lefschetz_record()
    assert (r["D_A1"], r["H"], r["D_A2"], r.lam) == (80, 0, 0, 10)
    assert r["D_D4"] == 0
    assert r.lam_is_stored()


def test_hyperelliptic_record():
    r = hyperelliptic_record(5, 2)
    assert (r["D_A1"], r.lam, r["H"]) == (44, 5, -2)
    assert not r.lam_is_stored()
    small = hyperelliptic_record(1, 2)
    assert (small["D_A1"], small.lam) == (12, 1)
    with pytest.raises(PencilError):
        hyperelliptic_record(5, 3)


@pytest.mark.parametrize("g, d", [(5, 2), (1, 2), (3, 4), (2, 6)])
def test_hyperelliptic_curve_is_contracted(g, d):
    r = hyperelliptic_record(g, d)
    L0 = ledger_cubic()["L0"]
    assert r["D_A1"] * L0["D_A1"] + r["H"] * L0["H"] == 0


def test_hyperelliptic_h_follows_the_polarization():
    other = DivisorClass.of("modexc", D_A1=1, H=11)
    assert hyperelliptic_record(5, 2, other)["H"] == -4


def test_generalized_lefschetz_lambda():
    assert lambda_generalized_lefschetz(3, 5) == F(107, 6)
    assert lambda_audit(1, 5).lambda_lefschetz == 6
    for n in range(1, 5):
        assert lambda_generalized_lefschetz(n, 3) == n - F(1, 6)


@pytest.mark.parametrize("n, d", list(itertools.product(range(1, 5), range(2, 8))))
def test_cusp_lowers_lambda_by_a_sixth(n, d):
    audit = lambda_audit(n, d)
    assert audit.lambda_B - audit.lambda_lefschetz == F(-1, 6)
    assert audit.lambda_T == (audit.kappa_T + audit.delta_T) / 12
    assert audit.kappa_T == 6 * (audit.kappa_lefschetz - F(1, 6))
    assert audit.delta_T == 6 * (audit.delta_lefschetz - 2 + F(1, 6))


def test_prym_hodge_class():
    a = prym_audit()
    assert (a.delta0, a.delta0_u, a.delta0_r) == (142, 78, 32)
    assert a.lambda_eta == F(59, 6)
    assert a.lambda_eta == a.lambda_tilde - a.lambda_B
    r = prym_lambda_a2_pencil()
    assert (r["D_A1"], r["H"], r["D_A2"], r.lam) == (78, 0, F(1, 6), F(59, 6))


def test_solve_l2():
    expected = DivisorClass.of("refined", D_A1=F(1, 8), H=F(1, 4), D_A2=F(1, 2))
    assert solve_l2(standard_records()) == expected
    assert solve_l2(standard_records()) == ledger_cubic()["L2_refined"]


@pytest.mark.parametrize("order", list(itertools.permutations(range(3))))
def test_solve_l2_ignores_record_order(order):
    recs = standard_records()
    assert solve_l2([recs[i] for i in order]) == ledger_cubic()["L2_refined"]


def test_solve_l2_sub_basis():
    two = solve_l2(standard_records()[:2], ("D_A1", "H"))
    assert two == DivisorClass.of("modexc", D_A1=F(1, 8), H=F(1, 4))
    assert two == ledger_cubic()["L2"]


def test_solve_l2_needs_enough_independent_curves():
    recs = standard_records()
    with pytest.raises(InsufficientTestCurvesError):
        solve_l2(recs[:2])
    with pytest.raises(InsufficientTestCurvesError):
        solve_l2([recs[0], recs[1], recs[1]])


def test_boundary_rows():
    rows = {r.singularity: r for r in boundary_table()}
    assert list(rows) == ["secant", "A1", "A2", "A4", "A3", "A5", "D4"]
    a2 = rows["A2"]
    assert (a2.curve_moduli_dim, a2.tail_dim, a2.limit_dim_bound) == ((8, 0), (1, 0), 9)
    a4 = rows["A4"]
    assert (a4.curve_moduli_dim, a4.tail_dim, a4.limit_dim_bound, a4.limit_is_bound) == ((5, 1), (3, 0), 8, True)
    assert [r.limit_dim_bound for r in rows.values()] == [9, 9, 9, 8, 6, 6, 4]
    assert rows["A5"].total_dim == 9 and rows["A3"].total_dim == 9


@pytest.mark.parametrize("label", ["A1", "A2", "A3", "A4", "A5", "D4"])
def test_abelian_dimension_is_five(label):
    assert abelian_account(label).total == 5


def test_a2_accounting():
    acc = abelian_account("A2")
    assert (acc.normalization_genus, acc.prym_dim, acc.toric_rank, acc.tail_genus) == (5, 4, 0, 1)


def test_table_mismatch_is_reported(monkeypatch):
    table = dict(pencils.TABLE_ONE)
    table["A4"] = ((5, 1), (3, 0), 7, True)
    monkeypatch.setattr(pencils, "TABLE_ONE", table)
    with pytest.raises(TableMismatchError):
        boundary_table()


def test_profile_invariants():
    with pytest.raises(PencilError):
        BoundaryProfile("A1", "M_4", (-1, 0), "-", None, "x", 9, False)
    with pytest.raises(PencilError):
        BoundaryProfile("A1", "M_4", (9, 0), "-", None, "x", 10, False)
