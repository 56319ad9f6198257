"""Divisor classes with rational coordinates in named bases, and the relation ledger.

Four ledgers are used, and classes from different ledgers never mix:

* ``git``: the GIT quotient, basis (Sigma,);
* ``hat``: the first Kirwan blow-up, basis (Sigma', H'); ``hat-g3`` is the
  genus-3 analogue with the same names;
* ``modexc``: the full resolution modulo all exceptional divisors, basis (D_A1, H);
* ``refined``: the full resolution keeping the exceptional divisors,
  basis (D_A1, H, D_A2, D_A3, D_A4, D_A5, D_D4).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactalg import SingularSystemError, solve

GIT_BASIS = ("Sigma",)
HAT_BASIS = ("Sigma'", "H'")
MODEXC_BASIS = ("D_A1", "H")
REFINED_BASIS = ("D_A1", "H", "D_A2", "D_A3", "D_A4", "D_A5", "D_D4")

BASES = {
    "git": GIT_BASIS,
    "hat": HAT_BASIS,
    "hat-g3": HAT_BASIS,
    "modexc": MODEXC_BASIS,
    "refined": REFINED_BASIS,
}


class LedgerError(ValueError):
    pass


class NoProportionalityError(LedgerError):
    pass


class LedgerInconsistencyError(LedgerError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    ledger: str
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if self.ledger not in BASES:
            raise LedgerError(f"unknown ledger {self.ledger!r}")
        coords = tuple(Fraction(c) for c in self.coords)
        if len(coords) != len(BASES[self.ledger]):
            raise LedgerError(f"{self.ledger} classes have {len(BASES[self.ledger])} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @property
    def basis(self) -> tuple[str, ...]:
        return BASES[self.ledger]

    @classmethod
    def zero(cls, ledger: str) -> "DivisorClass":
        return cls(ledger, (0,) * len(BASES[ledger]))

    @classmethod
    def of(cls, ledger: str, **named) -> "DivisorClass":
        """Build from keyword coordinates; primes in names are written as ``_p``."""
        values = {k.replace("_p", "'"): v for k, v in named.items()}
        return cls.from_mapping(ledger, values)

    @classmethod
    def from_mapping(cls, ledger: str, values: Mapping[str, object]) -> "DivisorClass":
        basis = BASES[ledger]
        unknown = set(values) - set(basis)
        if unknown:
            raise LedgerError(f"names {sorted(unknown)} are not in the {ledger} basis {basis}")
        return cls(ledger, tuple(Fraction(values.get(b, 0)) for b in basis))

    @classmethod
    def unit(cls, ledger: str, name: str) -> "DivisorClass":
        return cls.from_mapping(ledger, {name: 1})

    def __getitem__(self, name: str) -> Fraction:
        try:
            return self.coords[self.basis.index(name)]
        except ValueError:
            raise LedgerError(f"{name!r} is not in the {self.ledger} basis") from None

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.basis, self.coords))

    def _same(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError("divisor classes combine only with divisor classes")
        if other.ledger != self.ledger:
            raise LedgerError(f"cannot combine a {self.ledger} class with a {other.ledger} class")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.ledger, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.ledger, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.ledger, tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "DivisorClass":
        s = Fraction(scalar)
        return DivisorClass(self.ledger, tuple(s * a for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "DivisorClass":
        return self * (1 / Fraction(scalar))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def normalized(self) -> "DivisorClass":
        """Scale so the first nonzero coordinate is 1 (zero stays zero)."""
        lead = next((c for c in self.coords if c), None)
        return self if lead is None else self / lead

    def project(self, ledger: str) -> "DivisorClass":
        """Drop coordinates missing from the target basis (refined to modexc)."""
        target = BASES[ledger]
        if not set(target) <= set(self.basis):
            raise LedgerError(f"cannot project {self.ledger} onto {ledger}")
        return DivisorClass(ledger, tuple(self[b] for b in target))

    def __str__(self) -> str:
        parts = []
        for name, c in zip(self.basis, self.coords):
            if not c:
                continue
            if c == 1:
                parts.append(f"+ {name}")
            elif c == -1:
                parts.append(f"- {name}")
            else:
                parts.append(f"{'-' if c < 0 else '+'} {abs(c)}*{name}")
        if not parts:
            return "0"
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


@dataclass(frozen=True)
class RelationLedger:
    classes: Mapping[str, DivisorClass]
    provenance: Mapping[str, str]
    annotations: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        missing = set(self.classes) - set(self.provenance)
        if missing:
            raise LedgerError(f"classes without provenance: {sorted(missing)}")

    def __getitem__(self, name: str) -> DivisorClass:
        return self.classes[name]

    def names(self) -> list[str]:
        return list(self.classes)


def ledger_cubic() -> RelationLedger:
    """The cubic-threefold classes in every ledger, each with its derivation."""
    r = Fraction
    classes: dict[str, DivisorClass] = {}
    prov: dict[str, str] = {}

    def put(name: str, cls: DivisorClass, why: str) -> None:
        classes[name] = cls
        prov[name] = why

    put("K_git", DivisorClass("git", (r(-7, 16),)),
        "canonical class of P^34 descends: -35 / deg(discriminant) = -35/80")
    put("L0'", DivisorClass.of("hat", Sigma_p=1, H_p=22),
        "pullback of Sigma to the Kirwan blow-up; H' coefficient = degree of the binary duodecic discriminant")
    put("L1'", DivisorClass.of("hat", Sigma_p=1, H_p=14),
        "divisor of the weight-48 restricted Borcherds form, orders 3 and 84 over ramification 3 and 6")
    put("K'", DivisorClass.of("hat", Sigma_p=r(-7, 16), H_p=r(19, 8)),
        "ball-quotient Riemann-Hurwitz: (d+1)/w div(phi) - (1-1/3) Sigma' - (1-1/6) H'")
    put("K", DivisorClass.of("modexc", D_A1=r(-7, 16), H=r(19, 8)),
        "K' pulled back, modulo exceptional divisors")
    put("L0", DivisorClass.of("modexc", D_A1=1, H=22), "L0' pulled back, modulo exceptional divisors")
    put("L1", DivisorClass.of("modexc", D_A1=1, H=14), "L1' pulled back, modulo exceptional divisors")
    put("L2", DivisorClass.of("modexc", D_A1=r(1, 8), H=r(1, 4)),
        "Hodge class from three test curves, projected to (D_A1, H)")
    put("K_refined", DivisorClass.of("refined", D_A1=r(-7, 16), H=r(19, 8), D_A2=r(-42, 16)),
        "K' pulled back through the A2 blow-up: eps*Sigma' = D_A1 + 6 D_A2, eps*H' = H")
    put("L0_refined", DivisorClass.of("refined", D_A1=1, H=22, D_A2=6), "L0' pulled back through the A2 blow-up")
    put("L1_refined", DivisorClass.of("refined", D_A1=1, H=14, D_A2=6), "L1' pulled back through the A2 blow-up")
    put("L2_refined", DivisorClass.of("refined", D_A1=r(1, 8), H=r(2, 8), D_A2=r(4, 8)),
        "Hodge class solved from Lefschetz, hyperelliptic and A2 generalized Lefschetz pencils")
    annotations = {
        "alpha(L0)": "6/11",
        "alpha(L1)": "17/28",
        "alpha(L2)": "13/8",
    }
    return RelationLedger(classes, prov, annotations)


def ledger_genus3() -> RelationLedger:
    """Genus-3 analogue. Only the stated classes; the log-canonical alphas are annotations.

    The alphas 17/28, 7/10 and 2 need stack-level corrections that are not
    fully specified, so they are recorded rather than derived.
    """
    r = Fraction
    classes = {
        "L1'": DivisorClass.of("hat-g3", Sigma_p=1, H_p=5),
        "K'": DivisorClass.of("hat-g3", Sigma_p=r(-5, 9), H_p=r(2, 9)),
    }
    prov = {
        "L1'": "weight-18 form vanishing to orders 2 and 10, both divisors reflective of order 4",
        "K'": "ball-quotient Riemann-Hurwitz with d = 6, w = 18, n1 = n2 = 4",
    }
    annotations = {"alpha(GIT)": "17/28", "alpha(ball)": "7/10", "alpha(Jacobian)": "2"}
    return RelationLedger(classes, prov, annotations)


# ---------------------------------------------------------------------------
# proportionality


@dataclass(frozen=True)
class Proportionality:
    alpha: Fraction
    beta: Fraction


def _solve_proportional(K: DivisorClass, L: DivisorClass, direction: DivisorClass) -> Proportionality:
    """Solve ``K + alpha * direction = beta * L`` over every coordinate."""
    K._same(L)
    K._same(direction)
    if L.is_zero():
        raise LedgerError("L must be nonzero")
    rows = [[dc, -lc] for dc, lc in zip(direction.coords, L.coords)]
    rhs = [-kc for kc in K.coords]
    try:
        alpha, beta = solve(rows, rhs)
    except SingularSystemError as exc:
        raise NoProportionalityError(f"K + alpha*e = beta*L has no unique solution: {exc}") from None
    return Proportionality(alpha, beta)


def solve_alpha(K: DivisorClass, L: DivisorClass, direction: str) -> Proportionality:
    """``alpha`` and ``beta`` with ``K + alpha * e_direction = beta * L``."""
    return _solve_proportional(K, L, DivisorClass.unit(K.ledger, direction))


COMPOSITE_A2 = {"D_A1": 1, "D_A2": 6}


def solve_alpha_composite(K: DivisorClass, L: DivisorClass,
                          directions: Mapping[str, object] | Sequence[str] = ("D_A1", "D_A2")) -> Proportionality:
    """As ``solve_alpha`` along a weighted direction, by default ``D_A1 + 6 D_A2``.

    A bare list of names takes its weights from the A2 pullback of Sigma'.
    """
    if not isinstance(directions, Mapping):
        directions = {name: COMPOSITE_A2.get(name, 1) for name in directions}
    return _solve_proportional(K, L, DivisorClass.from_mapping(K.ledger, directions))


# ---------------------------------------------------------------------------
# blow-up of the A2 locus


SIGMA_A2_MULTIPLICITY = 6


def blowup_pullback(cls: DivisorClass, a2_multiplicity: int = SIGMA_A2_MULTIPLICITY) -> DivisorClass:
    """``eps*`` from (Sigma', H') to the refined basis.

    Sigma' pulls back to ``D_A1 + 6 D_A2`` and H' to ``H``; the canonical
    class pulls back to the canonical class, so the same linear map applies.
    """
    if cls.ledger != "hat":
        raise LedgerError(f"blowup_pullback expects a hat class, got {cls.ledger}")
    s, h = cls["Sigma'"], cls["H'"]
    return DivisorClass.of("refined", D_A1=s, D_A2=a2_multiplicity * s, H=h)


def pullback_modexc(cls: DivisorClass) -> DivisorClass:
    """Sigma' to D_A1 and H' to H, forgetting exceptional divisors."""
    if cls.ledger != "hat":
        raise LedgerError(f"expected a hat class, got {cls.ledger}")
    return DivisorClass.of("modexc", D_A1=cls["Sigma'"], H=cls["H'"])


@dataclass(frozen=True)
class ReflectionCount:
    hyperplanes: int
    reflection_order: int
    stabilizer: int
    upstairs: int
    multiplicity: Fraction


def reflection_multiplicity(hyperplanes: int = 4, reflection_order: int = 3, stabilizer: int = 2) -> ReflectionCount:
    """Coefficient of D_A2 in eps*Sigma'.

    The A2 locus is where ``hyperplanes`` reflection hyperplanes meet; each
    enters the pullback of Sigma' with the reflection order, so the blow-up
    exceptional divisor upstairs has multiplicity ``hyperplanes * order``.
    The exceptional divisor upstairs is fixed pointwise by a subgroup of
    order ``stabilizer``, so its image D_A2 pulls back to ``stabilizer``
    times it, and the coefficient of D_A2 is the quotient.
    """
    up = hyperplanes * reflection_order
    return ReflectionCount(hyperplanes, reflection_order, stabilizer, up, Fraction(up, stabilizer))


def reflection_multiplicity_check(hyperplanes: int = 4, reflection_order: int = 3, stabilizer: int = 2,
                                  expected: int | None = SIGMA_A2_MULTIPLICITY) -> Fraction:
    """Recompute the D_A2 coefficient; raise if it disagrees with ``expected``.

    Pass ``expected=None`` to evaluate counterfactual parameters.
    """
    m = reflection_multiplicity(hyperplanes, reflection_order, stabilizer).multiplicity
    if expected is not None and m != expected:
        raise LedgerInconsistencyError(f"reflection count gives {m}, ledger has {expected}")
    return m


def all_classes(ledger: RelationLedger) -> Iterable[tuple[str, DivisorClass, str]]:
    for name, cls in ledger.classes.items():
        yield name, cls, ledger.provenance[name]
