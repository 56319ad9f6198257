"""Test curves for the Hodge class and the boundary dimension table.

Three one-parameter families meet the divisors D_A1, H and D_A2 in known
numbers and carry a known degree of the Hodge class; solving the resulting
linear system gives the Hodge class in that basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Mapping, Sequence

from .exactalg import SingularSystemError, solve
from .picard import DivisorClass, ledger_cubic

L2_BASIS = ("D_A1", "H", "D_A2")
CUSP_CORRECTION = 2  # nodal members absorbed by the cuspidal member of an A2 pencil
STABLE_REDUCTION_DEGREE = 6  # base change needed to stably reduce a cusp


class PencilError(ValueError):
    pass


class InsufficientTestCurvesError(PencilError):
    pass


class TableMismatchError(PencilError):
    pass


@dataclass(frozen=True)
class PencilRecord:
    name: str
    intersections: Mapping[str, Fraction]
    lam: Fraction
    provenance: Mapping[str, str] = field(default_factory=dict)

    def __getitem__(self, divisor: str) -> Fraction:
        # divisors the defining lemma does not mention are disjoint from the curve
        return Fraction(self.intersections.get(divisor, 0))

    def lam_is_stored(self) -> bool:
        return self.provenance.get("lambda", "").startswith("stored")


def discriminant_degree(n: int, d: int) -> int:
    """Degree of the discriminant hypersurface of degree-d hypersurfaces in P^(n+1)."""
    if n < 1 or d < 2:
        raise PencilError("need n >= 1 and d >= 2")
    return (n + 2) * (d - 1) ** (n + 1)


def parameter_space_dim(n: int, d: int) -> int:
    """``N + 1 = binom(n+d+1, d)``: the number of coefficients of such a hypersurface."""
    if n < 1 or d < 1:
        raise PencilError("need n, d >= 1")
    return comb(n + d + 1, d)


def canonical_ratio(n: int, d: int) -> Fraction:
    """``(N+1) / deg(discriminant)``; K of the GIT quotient is minus this times the discriminant."""
    return Fraction(parameter_space_dim(n, d), discriminant_degree(n, d))


def binary_discriminant_degree(d: int) -> int:
    """Degree of the discriminant of binary forms of degree d."""
    if d < 2:
        raise PencilError("need d >= 2")
    return 2 * (d - 1)


def lefschetz_record() -> PencilRecord:
    """A general pencil of cubic threefolds; only its nodal members are singular."""
    return PencilRecord(
        "lefschetz",
        {"D_A1": Fraction(discriminant_degree(3, 3)), "H": Fraction(0), "D_A2": Fraction(0)},
        Fraction(10),
        {
            "D_A1": "degree of the discriminant of cubic threefolds",
            "H": "a general pencil misses the hyperelliptic locus",
            "D_A2": "a general pencil has no cuspidal member",
            "lambda": "stored: residue frame O(2)^5, determinant degree 10",
        },
    )


def hyperelliptic_record(g: int = 5, d: int = 2, L0: DivisorClass | None = None) -> PencilRecord:
    """Double covers of P^1 x P^1 branched along a (2g+2, d) curve, lifted to the resolution.

    The curve lies in H, which the map to the GIT quotient contracts, so
    ``B.L0 = 0`` forces ``B.H = -(L0_{D_A1} / L0_H) * B.D_A1``.
    """
    if d % 2:
        raise PencilError("the branch degree d must be even")
    if L0 is None:
        L0 = ledger_cubic()["L0"]
    nodal = Fraction(2 * d * (2 * g + 1))
    h = -nodal * L0["D_A1"] / L0["H"]
    return PencilRecord(
        f"hyperelliptic(g={g},d={d})",
        {"D_A1": nodal, "H": h, "D_A2": Fraction(0)},
        Fraction(g * d, 2),
        {
            "D_A1": "2d(2g+1) nodal members",
            "H": "from B.L0 = 0 with L0 = D_A1 + 22 H",
            "D_A2": "no cuspidal members",
            "lambda": "gd/2",
        },
    )


@dataclass(frozen=True)
class LambdaAudit:
    """Hodge class of an A2 generalized Lefschetz pencil of plane curves, step by step."""

    n: int
    d: int
    lambda_lefschetz: Fraction
    delta_lefschetz: Fraction
    kappa_lefschetz: Fraction
    kappa_T: Fraction
    delta_T: Fraction
    lambda_T: Fraction
    lambda_B: Fraction


def lambda_audit(n: int, d: int) -> LambdaAudit:
    """λ(B) via stable reduction over a degree-6 base change ``T -> B``.

    For the Lefschetz pencil ``B'`` of the same degree: λ = n(d-1)(d-2)/2,
    δ = n * 3(d-1)^2 (the discriminant of plane curves) and κ = 12λ - δ.
    The cusp changes κ by -1/6 and δ by -2 + 1/6 per unit of base, so
    ``λ(T) = (κ(T) + δ(T))/12`` and ``λ(B) = λ(T)/6``.
    """
    if n < 1 or d < 1:
        raise PencilError("need n, d >= 1")
    s = STABLE_REDUCTION_DEGREE
    lam1 = Fraction(n * (d - 1) * (d - 2), 2)
    delta1 = Fraction(n * 3 * (d - 1) ** 2)
    kappa1 = 12 * lam1 - delta1
    sixth = Fraction(1, s)
    kappa_t = s * (kappa1 - sixth)
    delta_t = s * (delta1 - CUSP_CORRECTION + sixth)
    lam_t = (kappa_t + delta_t) / 12
    return LambdaAudit(n, d, lam1, delta1, kappa1, kappa_t, delta_t, lam_t, lam_t / s)


def lambda_generalized_lefschetz(n: int, d: int) -> Fraction:
    return lambda_audit(n, d).lambda_B


@dataclass(frozen=True)
class PrymAudit:
    lambda_B: Fraction
    delta0: int
    delta0_u: int
    delta0_r: Fraction
    lambda_eta: Fraction
    lambda_tilde: Fraction


def prym_audit(pencil_degree: int = 3, quintic: int = 5) -> PrymAudit:
    """Prym Hodge class of the discriminant-cover pencil of an A2 cubic pencil.

    The pencil of cubics projects from a line to a degree-3 pencil of plane
    quintics with one cuspidal member. All its nodal quintics are counted
    by δ0 = 3 * 48 - 2; those coming from nodal cubics (unramified side) by
    δ0u = 80 - 2; the rest split evenly between the two ramified branches.
    """
    lam = lambda_generalized_lefschetz(pencil_degree, quintic)
    delta0 = pencil_degree * discriminant_degree(1, quintic) - CUSP_CORRECTION
    delta0_u = discriminant_degree(3, 3) - CUSP_CORRECTION
    delta0_r = Fraction(delta0 - delta0_u, 2)
    lam_tilde = 2 * lam - delta0_r / 4
    lam_eta = lam - delta0_r / 4
    assert lam_eta == lam_tilde - lam
    return PrymAudit(lam, delta0, delta0_u, delta0_r, lam_eta, lam_tilde)


def prym_lambda_a2_pencil() -> PencilRecord:
    a = prym_audit()
    return PencilRecord(
        "a2-pencil",
        {"D_A1": Fraction(a.delta0_u), "H": Fraction(0), "D_A2": Fraction(1, STABLE_REDUCTION_DEGREE)},
        a.lambda_eta,
        {
            "D_A1": "discriminant degree 80 minus 2 absorbed by the cusp",
            "H": "the pencil misses the hyperelliptic locus",
            "D_A2": "one cuspidal member, seen after a degree-6 base change",
            "lambda": "lambda - delta0r/4 with delta0r = (142 - 78)/2",
        },
    )


def solve_l2(records: Sequence[PencilRecord], basis: Sequence[str] = L2_BASIS) -> DivisorClass:
    """Coefficients c with ``sum_j c_j (B_i . D_j) = B_i . lambda`` for every record."""
    basis = tuple(basis)
    if len(records) < len(basis):
        raise InsufficientTestCurvesError(f"{len(records)} records for {len(basis)} unknowns")
    rows = [[r[b] for b in basis] for r in records]
    rhs = [r.lam for r in records]
    try:
        c = solve(rows, rhs)
    except SingularSystemError as exc:
        raise InsufficientTestCurvesError(str(exc)) from None
    ledger = "refined" if "D_A2" in basis else "modexc"
    return DivisorClass.from_mapping(ledger, dict(zip(basis, c)))


def standard_records() -> list[PencilRecord]:
    return [lefschetz_record(), hyperelliptic_record(5, 2), prym_lambda_a2_pencil()]


# ---------------------------------------------------------------------------
# boundary table


def dim_M(g: int, marks: int = 0) -> int:
    if g == 1:
        if marks < 1:
            raise PencilError("M_1 needs a marked point")
        return 1 + (marks - 1)
    return 3 * g - 3 + marks


def dim_M_hyperelliptic(g: int, marks: int = 0) -> int:
    return 2 * g - 1 + marks


def delta_invariant(label: str) -> int:
    if label.startswith("A"):
        return (int(label[1:]) + 1) // 2
    if label == "D4":
        return 3
    raise PencilError(f"no delta invariant for {label}")


@dataclass(frozen=True)
class AbelianAccount:
    """Dimension of the limit intermediate Jacobian, split into its parts."""

    normalization_genus: int
    prym_dim: int
    toric_rank: int
    tail_genus: int

    @property
    def total(self) -> int:
        return self.prym_dim + self.toric_rank + self.tail_genus


def abelian_account(label: str) -> AbelianAccount:
    """Prym of the normalized quintic cover, plus toric rank, plus tail.

    The plane quintic has genus 6. An A_k point has delta = ceil(k/2) and,
    for odd k, two branches giving one toric direction; the stable tail has
    genus floor(k/2). A D4 point splits the quintic into two components
    (genera summing to 4, each contributing genus - 1 to the Prym) with toric
    rank 2 and an elliptic tail.
    """
    if label.startswith("A"):
        k = int(label[1:])
        g_norm = 6 - delta_invariant(label)
        return AbelianAccount(g_norm, g_norm - 1, k % 2, k // 2)
    if label == "D4":
        components = 2
        g_total = 6 - delta_invariant(label) + components - 1
        return AbelianAccount(g_total, g_total - components, 2, 1)
    raise PencilError(f"no accounting for {label}")


@dataclass(frozen=True)
class BoundaryProfile:
    singularity: str
    curve_moduli: str
    curve_moduli_dim: tuple[int, int] | None
    tail: str
    tail_dim: tuple[int, int] | None
    limit_description: str
    limit_dim_bound: int
    limit_is_bound: bool
    abelian: AbelianAccount | None = None

    def __post_init__(self):
        for part in (self.curve_moduli_dim, self.tail_dim):
            if part is not None and min(part) < 0:
                raise PencilError("dimensions must be non-negative")
        if not 0 <= self.limit_dim_bound <= 9:
            raise PencilError("limit dimension must lie in [0, 9]")

    @property
    def total_dim(self) -> int:
        return sum(sum(p) for p in (self.curve_moduli_dim, self.tail_dim) if p is not None)


# rows of the table as printed: (curve split, tail split, limit, is a bound)
TABLE_ONE: dict[str, tuple] = {
    "secant": (None, None, 9, False),
    "A1": ((9, 0), None, 9, False),
    "A2": ((8, 0), (1, 0), 9, False),
    "A4": ((5, 1), (3, 0), 8, True),
    "A3": ((5, 2), (1, 1), 6, True),
    "A5": ((3, 2), (3, 1), 6, True),
    "D4": (None, (1, 0), 4, True),
}


def _curve_part(label: str) -> tuple[str, tuple[int, int] | None]:
    """Moduli of the normalized (2,3) curve of lines through the singular point."""
    if label == "A1":
        return "M_4", (dim_M(4), 0)
    if label == "A2":
        # curves on a quadric cone: the theta-null divisor
        return "theta_null in M_4", (dim_M(4) - 1, 0)
    if label == "D4":
        return "*", None
    k = int(label[1:])
    curve_sing = f"A{k - 2}"
    g = 4 - delta_invariant(curve_sing)
    marks = 2 if (k - 2) % 2 else 1
    hyper = g >= 3  # genus 2 is hyperelliptic anyway and has the same moduli count
    name = f"M^h_{{{g},{marks}}}" if hyper else f"M_{{{g},{marks}}}"
    return name, (dim_M_hyperelliptic(g) if hyper else dim_M(g), marks)


def _tail_part(label: str) -> tuple[str, tuple[int, int] | None]:
    if label in ("A1", "secant"):
        return "-", None
    if label == "D4":
        return "M_{1,1}", (dim_M(1, 1), 0)
    k = int(label[1:])
    h = k // 2
    marks = k % 2
    if h == 1:
        return f"M_{{1,{1 + marks}}}", (dim_M(1, 1), marks)
    return (f"M_{{{h},{marks}}}" if marks else f"M_{h}"), (dim_M(h), marks)


def boundary_table() -> list[BoundaryProfile]:
    """Dimensions of the boundary strata and of their images in the Jacobian compactification.

    The limit dimension forgets the marked points: it is the unmarked curve
    moduli plus the unmarked tail moduli. For D4 the curve part is the
    2-dimensional Prym of the two-component quintic, with dim A_2 = 3.
    """
    rows = []
    for label, (curve_exp, tail_exp, limit_exp, bound) in TABLE_ONE.items():
        if label == "secant":
            computed_limit = dim_M_hyperelliptic(5)
            profile = BoundaryProfile(label, "-", None, "-", None, "J^h_5", computed_limit, False)
        else:
            cname, cdim = _curve_part(label)
            tname, tdim = _tail_part(label)
            base = cdim[0] if cdim is not None else 3  # dim A_2
            computed_limit = base + (tdim[0] if tdim is not None else 0)
            if cdim != curve_exp:
                raise TableMismatchError(f"{label}: curve dims {cdim} != {curve_exp}")
            if tdim != tail_exp:
                raise TableMismatchError(f"{label}: tail dims {tdim} != {tail_exp}")
            desc = {"A1": "C*-ext J_4", "A2": "K", "A4": "J^h_{2,3}", "A3": "C*-ext J^h_{1,3}",
                    "A5": "C*-ext J_{2,2}", "D4": "C*-ext *"}[label]
            profile = BoundaryProfile(label, cname, cdim, tname, tdim, desc, computed_limit, bound,
                                      abelian_account(label))
        if computed_limit != limit_exp:
            raise TableMismatchError(f"{label}: limit dim {computed_limit} != {limit_exp}")
        rows.append(profile)
    return rows
