"""Seeded generators for fuzzing. All randomness goes through ``random.Random``."""
from __future__ import annotations

import random

from .evolalg import EvolutionAlgebra
from .field import Field
from .matrix import Matrix

KINDS = ("generic", "rank_deficient", "zero_column", "proportional")


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


def random_matrix(rng: random.Random, field: Field, nrows: int, ncols: int | None = None) -> Matrix:
    ncols = nrows if ncols is None else ncols
    return Matrix(field, [[field.sample(rng) for _ in range(ncols)] for _ in range(nrows)])


def random_perfect_algebra(rng: random.Random, field: Field, n: int) -> EvolutionAlgebra:
    while True:
        M = random_matrix(rng, field, n)
        if M.determinant():
            return EvolutionAlgebra(field, M)


def random_algebra(rng: random.Random, field: Field, n: int, kind: str = "generic") -> EvolutionAlgebra:
    """Random structure matrix of a requested flavour.

    ``rank_deficient`` multiplies an ``n x r`` by an ``r x n`` factor with
    ``r < n``; ``zero_column`` blanks at least one column; ``proportional``
    overwrites a column with a nonzero multiple of another.
    """
    if kind == "generic":
        M = random_matrix(rng, field, n)
    elif kind == "rank_deficient":
        r = rng.randrange(0, n) if n > 1 else 0
        if r == 0:
            M = Matrix.zeros(field, n)
        else:
            M = random_matrix(rng, field, n, r) @ random_matrix(rng, field, r, n)
    elif kind == "zero_column":
        M = random_matrix(rng, field, n)
        blank = rng.sample(range(n), rng.randint(1, n))
        rows = [[field.zero if i in blank else x for i, x in enumerate(r)] for r in M.rows]
        M = Matrix(field, rows)
    elif kind == "proportional":
        M = random_matrix(rng, field, n)
        if n > 1:
            src, dst = rng.sample(range(n), 2)
            c = field.sample(rng, nonzero=True)
            rows = [list(r) for r in M.rows]
            for k in range(n):
                rows[k][dst] = c * rows[k][src]
            M = Matrix(field, rows)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return EvolutionAlgebra(field, M)
