"""Evolution algebras given by a structure matrix.

Convention: ``M[k][i]`` is the coefficient of ``e_k`` in ``e_i^2``, so column
``i`` of the structure matrix holds the coordinates of ``e_i^2``. For example
the algebra with ``e_1^2 = e_2`` and ``e_2^2 = 3 e_1`` is::

    {"field": "rational", "dimension": 2,
     "structure_matrix": [["0", "3"], ["1", "0"]]}

and distinct basis vectors always multiply to zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Sequence

from .errors import InvariantError, ParseError
from .field import Element, Field, field_from_json
from .matrix import Matrix, rref


@dataclass(frozen=True)
class EvolutionAlgebra:
    field: Field
    M: Matrix

    def __post_init__(self):
        if not self.M.is_square:
            raise InvariantError(f"structure matrix must be square, got {self.M.shape}")
        if self.M.nrows < 1:
            raise InvariantError("dimension must be at least 1")
        if self.M.field != self.field:
            raise InvariantError("structure matrix is over a different field")

    @classmethod
    def from_rows(cls, field: Field, rows) -> "EvolutionAlgebra":
        return cls(field, Matrix(field, rows))

    @property
    def n(self) -> int:
        return self.M.nrows

    def basis_vector(self, i: int) -> tuple:
        F = self.field
        return tuple(F.one if k == i else F.zero for k in range(self.n))

    def square(self, i: int) -> tuple:
        """Coordinates of ``e_i^2``."""
        return self.M.column(i)

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        """Product of two elements given in natural-basis coordinates."""
        if len(x) != self.n or len(y) != self.n:
            raise InvariantError(f"vectors must have length {self.n}")
        coeffs = [a * b for a, b in zip(x, y)]
        return self.M.apply(coeffs)

    def is_perfect(self) -> bool:
        return bool(self.M.determinant())

    def rank(self) -> int:
        return self.M.rank()

    def relabel(self, perm: Sequence[int]) -> "EvolutionAlgebra":
        """The same algebra in the reordered basis ``e'_i = e_perm[i]``."""
        n = self.n
        rows = [[self.M[perm[k], perm[i]] for i in range(n)] for k in range(n)]
        return EvolutionAlgebra(self.field, Matrix(self.field, rows))

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "dimension": self.n,
            "structure_matrix": self.M.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "EvolutionAlgebra":
        if not isinstance(data, dict):
            raise ParseError("algebra JSON must be an object")
        for key in ("field", "dimension", "structure_matrix"):
            if key not in data:
                raise ParseError(f"algebra JSON missing {key!r}")
        F = field_from_json(data["field"])
        M = Matrix.from_json(F, data["structure_matrix"])
        n = data["dimension"]
        if not isinstance(n, int) or n < 1:
            raise InvariantError(f"dimension must be a positive integer, got {n!r}")
        if M.shape != (n, n):
            raise InvariantError(f"structure matrix shape {M.shape} does not match dimension {n}")
        return cls(F, M)


def load_algebra(path) -> EvolutionAlgebra:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: {e}") from e
    return EvolutionAlgebra.from_json(data)


def multiply(A: EvolutionAlgebra, x: Sequence, y: Sequence) -> tuple:
    return A.multiply(x, y)


def is_perfect(A: EvolutionAlgebra) -> bool:
    return A.is_perfect()


@dataclass(frozen=True)
class SquareDecomposition:
    """How the squares ``e_i^2`` depend on one another.

    ``perm`` lists basis indices with the pivot columns first. ``C`` is
    ``r x (n - r)`` with ``e_{perm[r+i]}^2 = sum_k C[k][i] e_{perm[k]}^2``.
    ``proportional_to[i]`` is ``(j, c)`` when ``e_i^2 = c e_j^2`` for a
    pivot index ``j != i``.
    """

    perm: tuple[int, ...]
    r: int
    C: tuple[tuple[Element, ...], ...]
    zero_square: tuple[bool, ...]
    proportional_to: tuple[tuple[int, Element] | None, ...]
    pivots: tuple[int, ...] = dc_field(default=())

    @property
    def n(self) -> int:
        return len(self.perm)

    def dependents(self) -> list[int]:
        return list(self.perm[self.r:])


def proportionality(u: Sequence, v: Sequence):
    """Return ``c`` with ``u == c * v`` when both are nonzero, else ``None``."""
    t = next((k for k, b in enumerate(v) if b), None)
    if t is None or not u[t]:
        return None
    c = u[t] / v[t]
    if all(a == c * b for a, b in zip(u, v)):
        return c
    return None


def square_analysis(A: EvolutionAlgebra) -> SquareDecomposition:
    res = rref(A.M, transform=False)
    n, r = A.n, res.rank
    pivots = res.pivot_cols
    perm = pivots + tuple(c for c in range(n) if c not in pivots)
    C = tuple(tuple(res.R[k, perm[r + i]] for i in range(n - r)) for k in range(r))
    cols = A.M.columns()
    zero = tuple(not any(c) for c in cols)
    prop = []
    for i in range(n):
        partner = None
        if not zero[i]:
            for j in pivots:
                if j == i:
                    continue
                c = proportionality(cols[i], cols[j])
                if c is not None:
                    partner = (j, c)
                    break
        prop.append(partner)
    return SquareDecomposition(perm, r, C, zero, tuple(prop), pivots)
