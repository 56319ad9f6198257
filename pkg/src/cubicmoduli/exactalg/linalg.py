"""Exact linear algebra over Q on lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from gmpy2 import mpq

Matrix = list[list[Fraction]]


class SingularSystemError(ArithmeticError):
    """Raised when a linear system has no solution or no unique one."""


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def det(rows: Sequence[Sequence]) -> Fraction:
    m = to_matrix(rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    sign = Fraction(1)
    for c in range(n):
        pr = next((i for i in range(c, n) if m[i][c]), None)
        if pr is None:
            return Fraction(0)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    out = sign
    for i in range(n):
        out *= m[i][i]
    return out


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    m, pivots = rref(rows)
    n = len(m[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Unique solution of ``a x = b``; overdetermined consistent systems are fine."""
    if len(a) != len(b):
        raise ValueError("row count of a and length of b differ")
    if not a:
        raise SingularSystemError("empty system")
    n = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if n in pivots:
        raise SingularSystemError("inconsistent linear system")
    if len(pivots) < n:
        raise SingularSystemError(f"system has rank {len(pivots)} < {n} unknowns")
    x = [Fraction(0)] * n
    for r, pc in enumerate(pivots):
        x[pc] = m[r][n]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystemError("matrix is not invertible")
    return [row[n:] for row in m]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(col) for col in zip(*a)]


class SparseEchelon:
    """Incremental row echelon basis for sparse vectors keyed by column labels.

    Columns are compared through ``order`` (smaller index = eliminated first),
    which lets callers reduce with respect to a local monomial order.
    Entries are held as ``gmpy2.mpq`` internally.
    """

    def __init__(self, order: Mapping[Hashable, int]):
        self._order = order
        self._rows: dict[Hashable, dict[Hashable, Fraction]] = {}

    def __len__(self) -> int:
        return len(self._rows)

    def _pivot(self, row: Mapping[Hashable, Fraction]) -> Hashable:
        return min(row, key=self._order.__getitem__)

    def reduce(self, vec: Mapping[Hashable, Fraction]) -> dict[Hashable, Fraction]:
        row = {k: mpq(v.numerator, v.denominator) if isinstance(v, Fraction) else mpq(v)
               for k, v in vec.items() if v}
        while row:
            p = self._pivot(row)
            basis_row = self._rows.get(p)
            if basis_row is None:
                return row
            f = row[p]
            for k, v in basis_row.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, vec: Mapping[Hashable, Fraction]) -> bool:
        """Insert ``vec``; return True if it increased the rank."""
        row = self.reduce(vec)
        if not row:
            return False
        p = self._pivot(row)
        inv = 1 / row[p]
        self._rows[p] = {k: v * inv for k, v in row.items()}
        return True

    def contains(self, vec: Mapping[Hashable, Fraction]) -> bool:
        return not self.reduce(vec)
