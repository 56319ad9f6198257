"""ADE root lattices, root enumeration and the automorphic-form ledger.

Roots are vectors of norm 2 in the even normalization. The ledger turns
root counts into the weight and vanishing orders of a restricted Borcherds
form, then into the divisor of the form on the ball quotient and the
canonical class by the Riemann-Hurwitz correction for reflective divisors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactalg import inverse
from .picard import DivisorClass

NORM = 2


class LatticeError(ValueError):
    pass


def _cartan(n: int, edges: Sequence[tuple[int, int]]) -> tuple[tuple[int, ...], ...]:
    g = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        g[i][j] = g[j][i] = -1
    return tuple(map(tuple, g))


def cartan_matrix(kind: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of the simple roots of a simply laced root system."""
    if kind == "A" and n >= 1:
        return _cartan(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "D" and n >= 4:
        return _cartan(n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)])
    if kind == "E" and n in (6, 7, 8):
        # Bourbaki labels 1..n: chain 1-3-4-5-...-n with node 2 attached to 4
        edges = [(0, 2), (1, 3), (2, 3)] + [(i, i + 1) for i in range(3, n - 1)]
        return _cartan(n, edges)
    raise LatticeError(f"no root lattice {kind}{n}")


_NAME = re.compile(r"^\s*([ADE])_?(\d+)\s*$")


@dataclass(frozen=True)
class RootLattice:
    name: str
    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.gram
        n = len(g)
        if n == 0 or any(len(row) != n for row in g):
            raise LatticeError("Gram matrix must be square and nonempty")
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise LatticeError("Gram matrix must be symmetric")
        if any(g[i][i] % 2 for i in range(n)):
            raise LatticeError("Gram matrix must be even")
        _ldl(g)  # raises on indefinite input

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def parse(cls, text: str) -> "RootLattice":
        """``"E8"``, ``"A_2"`` or an orthogonal sum such as ``"E6+A2"``."""
        parts = [p for p in text.replace("⊕", "+").split("+")]
        lattices = []
        for p in parts:
            m = _NAME.match(p)
            if not m:
                raise LatticeError(f"cannot parse lattice name {p!r}")
            kind, n = m.group(1), int(m.group(2))
            lattices.append(cls(f"{kind}{n}", cartan_matrix(kind, n)))
        return lattices[0] if len(lattices) == 1 else direct_sum(*lattices)

    def norm(self, v: Sequence[int]) -> int:
        g = self.gram
        return sum(v[i] * g[i][j] * v[j] for i in range(len(v)) for j in range(len(v)))


def direct_sum(*lattices: RootLattice) -> RootLattice:
    n = sum(L.rank for L in lattices)
    g = [[0] * n for _ in range(n)]
    off = 0
    for L in lattices:
        for i in range(L.rank):
            for j in range(L.rank):
                g[off + i][off + j] = L.gram[i][j]
        off += L.rank
    return RootLattice("+".join(L.name for L in lattices), tuple(map(tuple, g)))


def _ldl(g) -> tuple[list[Fraction], list[list[Fraction]]]:
    """``x^T g x = sum_i d_i (x_i + sum_{j>i} r_ij x_j)^2``; raises unless definite."""
    n = len(g)
    d: list[Fraction] = []
    r = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        di = Fraction(g[i][i]) - sum((d[k] * r[k][i] ** 2 for k in range(i)), Fraction(0))
        if di <= 0:
            raise LatticeError("Gram matrix is not positive definite")
        d.append(di)
        r[i][i] = Fraction(1)
        for j in range(i + 1, n):
            r[i][j] = (Fraction(g[i][j]) - sum((d[k] * r[k][i] * r[k][j] for k in range(i)), Fraction(0))) / di
    return d, r


def coordinate_bounds(L: RootLattice, norm: int = NORM) -> list[int]:
    """``|x_i| <= sqrt(norm * (G^-1)_ii)`` for every vector of norm <= ``norm``.

    This is Cauchy-Schwarz for the pairing between ``x`` and the dual basis.
    """
    inv = inverse(L.gram)
    return [math.isqrt(int(norm * inv[i][i])) for i in range(L.rank)]


def _integer_window(center: Fraction, radius_sq: Fraction) -> range:
    """Integers x with (x - center)^2 <= radius_sq."""
    approx = math.sqrt(float(radius_sq)) if radius_sq > 0 else 0.0
    lo = math.floor(center - approx) - 1
    hi = math.ceil(center + approx) + 1
    while (lo - center) ** 2 > radius_sq and lo <= hi:
        lo += 1
    while (hi - center) ** 2 > radius_sq and hi >= lo:
        hi -= 1
    return range(lo, hi + 1)


def enumerate_vectors(L: RootLattice, norm: int = NORM) -> list[tuple[int, ...]]:
    """All nonzero lattice vectors of exactly the given norm (Fincke-Pohst)."""
    if L.rank > 8:
        raise LatticeError("enumeration is limited to rank <= 8")
    d, r = _ldl(L.gram)
    n = L.rank
    out: list[tuple[int, ...]] = []
    x = [0] * n

    def descend(i: int, budget: Fraction) -> None:
        center = -sum((r[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        for xi in _integer_window(center, budget / d[i]):
            x[i] = xi
            rest = budget - d[i] * (xi - center) ** 2
            if i == 0:
                if rest == 0:
                    out.append(tuple(x))
            else:
                descend(i - 1, rest)
        x[i] = 0

    descend(n - 1, Fraction(norm))
    out = [v for v in out if any(v)]
    assert all(L.norm(v) == norm for v in out)
    return out


@dataclass(frozen=True)
class RootEnumeration:
    lattice: RootLattice
    count: int
    vectors: tuple[tuple[int, ...], ...]


def enumerate_roots(L: RootLattice | str) -> RootEnumeration:
    if isinstance(L, str):
        L = RootLattice.parse(L)
    vecs = enumerate_vectors(L, NORM)
    return RootEnumeration(L, len(vecs), tuple(vecs))


def root_count(name: str) -> int:
    return enumerate_roots(name).count


# ---------------------------------------------------------------------------
# automorphic ledger


@dataclass(frozen=True)
class AutomorphicLedger:
    """Weights and orders of an automorphic form on a ball quotient.

    ``vanishing`` and ``ramification`` are keyed by the Picard names of the
    divisors (``Sigma'`` for the nodal/discriminant divisor, ``H'`` for the
    other one) and ``picard_ledger`` names the ledger their classes live in.
    ``derivation`` records how the weight and the orders were obtained.
    """

    base_weight: int | None
    root_counts: Mapping[str, int]
    ball_dim: int
    form_weight: int
    vanishing: Mapping[str, int]
    ramification: Mapping[str, int]
    picard_ledger: str = "hat"
    derivation: Mapping[str, str] = field(default_factory=dict)


def borcherds_arithmetic(counts: Mapping[str, int] | None = None) -> AutomorphicLedger:
    """Weight 12 + |roots(E6)|/2 and orders (|roots(big)| - |roots(E6)|)/2.

    The nodal divisor comes from E6 < E6+A2, the chordal/hyperelliptic one
    from E6 < E8. Ramification orders 3 and 6 are the orders of the complex
    reflections in those divisors, and the ball is 10-dimensional.
    """
    if counts is None:
        counts = {name: root_count(name) for name in ("E6", "E6+A2", "E8")}
    e6 = counts["E6"]
    for name, big in (("E6+A2", counts["E6+A2"]), ("E8", counts["E8"])):
        if (big - e6) % 2 or e6 % 2:
            raise LatticeError(f"odd root difference for {name}")
    weight = 12 + e6 // 2
    alpha = (counts["E6+A2"] - e6) // 2
    beta = (counts["E8"] - e6) // 2
    return AutomorphicLedger(
        base_weight=12,
        root_counts=dict(counts),
        ball_dim=10,
        form_weight=weight,
        vanishing={"Sigma'": alpha, "H'": beta},
        ramification={"Sigma'": 3, "H'": 6},
        picard_ledger="hat",
        derivation={
            "form_weight": f"12 + {e6}/2",
            "Sigma'": f"({counts['E6+A2']} - {e6})/2",
            "H'": f"({counts['E8']} - {e6})/2",
        },
    )


def genus3_ledger() -> AutomorphicLedger:
    """Plane-quartic analogue: weight 18, orders 2 and 10, both reflections of order 4, ball of dim 6."""
    return AutomorphicLedger(
        base_weight=None,
        root_counts={},
        ball_dim=6,
        form_weight=18,
        vanishing={"Sigma'": 2, "H'": 10},
        ramification={"Sigma'": 4, "H'": 4},
        picard_ledger="hat-g3",
        derivation={"form_weight": "stated", "Sigma'": "stated", "H'": "stated"},
    )


def form_divisor(ledger: AutomorphicLedger) -> DivisorClass:
    """``div(phi)`` on the quotient: vanishing order over ramification order."""
    return DivisorClass.from_mapping(
        ledger.picard_ledger,
        {name: Fraction(order, ledger.ramification[name]) for name, order in ledger.vanishing.items()},
    )


def quotient_divisor(ledger: AutomorphicLedger) -> DivisorClass:
    """``div(phi)`` scaled so its first coefficient is 1 (the zero class stays zero)."""
    return form_divisor(ledger).normalized()


def canonical_from_form(ledger: AutomorphicLedger) -> DivisorClass:
    """``K = (d+1)/w div(phi) - sum (1 - 1/n_i) H_i``."""
    if ledger.form_weight == 0:
        raise LatticeError("form weight must be nonzero")
    scale = Fraction(ledger.ball_dim + 1, ledger.form_weight)
    correction = DivisorClass.from_mapping(
        ledger.picard_ledger,
        {name: 1 - Fraction(1, n) for name, n in ledger.ramification.items()},
    )
    return form_divisor(ledger) * scale - correction
