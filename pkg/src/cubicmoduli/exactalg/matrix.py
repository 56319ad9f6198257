"""Matrices of polynomials and their determinants."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .polynomial import RationalPoly


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class PolyMatrix:
    rows: int
    cols: int
    entries: tuple[RationalPoly, ...]

    def __post_init__(self):
        if self.rows <= 0 or self.cols <= 0:
            raise DimensionError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        variables = {e.variables for e in self.entries}
        if len(variables) != 1:
            raise DimensionError("matrix entries must share one variable set")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RationalPoly]]) -> "PolyMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged rows")
        return cls(nrows, ncols, tuple(e for r in rows for e in r))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.entries[0].variables

    def __getitem__(self, ij: tuple[int, int]) -> RationalPoly:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[RationalPoly]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list[RationalPoly]]:
        return [self.row(i) for i in range(self.rows)]

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols))

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix.from_rows([[self[i, j] for i in range(self.rows)] for j in range(self.cols)])


def poly_det(m: PolyMatrix) -> RationalPoly:
    """Determinant by cofactor expansion along the first row."""
    if m.rows != m.cols:
        raise DimensionError(f"determinant of a {m.rows}x{m.cols} matrix")
    return _cofactor_det(m.to_rows())


def _cofactor_det(rows: list[list[RationalPoly]]) -> RationalPoly:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = RationalPoly.zero(rows[0][0].variables)
    for j, a in enumerate(rows[0]):
        if a.is_zero():
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = a * _cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


def bareiss_det(rows: Sequence[Sequence[RationalPoly]]) -> RationalPoly:
    """Fraction-free determinant; used for Sylvester matrices larger than 6x6."""
    m = [list(r) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of a non-square matrix")
    variables = m[0][0].variables
    one = RationalPoly.constant(variables, 1)
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return RationalPoly.zero(variables)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.divexact(prev) if prev != one else num
        prev = m[k][k]
    return m[n - 1][n - 1] * sign
