"""Seeded integer coordinate changes."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .exactalg import RationalPoly, inverse


def random_unimodular(n: int, rng: random.Random, steps: int | None = None, spread: int = 2) -> list[list[int]]:
    """Product of elementary integer matrices and a permutation; det = +-1."""
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 3 * n):
        i, j = rng.sample(range(n), 2)
        k = rng.choice([c for c in range(-spread, spread + 1) if c])
        for r in range(n):
            m[r][i] += k * m[r][j]
    perm = list(range(n))
    rng.shuffle(perm)
    return [m[perm[r]] for r in range(n)]


def random_invertible(n: int, rng: random.Random, spread: int = 3) -> list[list[int]]:
    """Random integer matrix with nonzero determinant (not necessarily unimodular)."""
    from .exactalg import det

    while True:
        m = [[rng.randint(-spread, spread) for _ in range(n)] for _ in range(n)]
        if det(m):
            return m


def change_coordinates(f: RationalPoly, matrix: Sequence[Sequence[int]]) -> RationalPoly:
    """``g(y) = f(M y)``."""
    return f.linear_change(matrix)


def pull_back_point(matrix: Sequence[Sequence[int]], p: Sequence) -> tuple[Fraction, ...]:
    """The point q with ``M q = p``; singular points of f map to those of f(M y)."""
    inv = inverse(matrix)
    return tuple(sum((row[j] * Fraction(p[j]) for j in range(len(p))), Fraction(0)) for row in inv)
