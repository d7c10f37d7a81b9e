"""Ternary automorphisms of perfect evolution algebras.

A ternary automorphism is a triple of bijections with ``f1(xy) = f2(x) f3(y)``.
For a perfect algebra ``f2`` and ``f3`` are monomial over one common
permutation ``sigma`` (``e_i -> lam_i e_sigma(i)`` and ``e_i -> mu_i e_sigma(i)``)
and ``f1`` is forced: it sends ``e_i^2`` to ``lam_i mu_i e_sigma(i)^2``.

Permutations are 0-indexed one-line lists here and 1-indexed in JSON.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import (
    FirstComponentMismatchError,
    InvariantError,
    NotMonomialError,
    NotPerfectError,
    ParseError,
    PermutationMismatchError,
)
from .evolalg import EvolutionAlgebra
from .field import Element, Field
from .matrix import Matrix


def _check_perm(sigma: Sequence[int], n: int) -> tuple[int, ...]:
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(n)):
        raise InvariantError(f"{list(sigma)} is not a permutation of 0..{n - 1}")
    return sigma


@dataclass(frozen=True)
class MonomialMap:
    """``e_i -> scalars[i] * e_sigma[i]``."""

    sigma: tuple[int, ...]
    scalars: tuple[Element, ...]

    def __post_init__(self):
        _check_perm(self.sigma, len(self.scalars))
        if any(not s for s in self.scalars):
            raise InvariantError("monomial map scalars must be nonzero")

    def matrix(self, field: Field) -> Matrix:
        n = len(self.sigma)
        rows = [[field.zero] * n for _ in range(n)]
        for i, (k, s) in enumerate(zip(self.sigma, self.scalars)):
            rows[k][i] = s
        return Matrix(field, rows)

    @classmethod
    def from_matrix(cls, m: Matrix) -> "MonomialMap":
        n = m.nrows
        sigma, scalars = [], []
        for i in range(n):
            support = [k for k in range(n) if m[k, i]]
            if len(support) != 1:
                raise NotMonomialError(f"column {i + 1} has {len(support)} nonzero entries")
            sigma.append(support[0])
            scalars.append(m[support[0], i])
        if len(set(sigma)) != n:
            raise NotMonomialError("two columns share their nonzero row")
        return cls(tuple(sigma), tuple(scalars))


@dataclass(frozen=True)
class TautTriple:
    f1: Matrix
    f2: Matrix
    f3: Matrix

    def __post_init__(self):
        if len({self.f1.shape, self.f2.shape, self.f3.shape}) != 1 or not self.f1.is_square:
            raise InvariantError("triple components must share one square shape")

    @property
    def n(self) -> int:
        return self.f1.nrows

    def components(self) -> tuple[Matrix, Matrix, Matrix]:
        return self.f1, self.f2, self.f3

    def to_json(self) -> dict:
        return {"f1": self.f1.to_json(), "f2": self.f2.to_json(), "f3": self.f3.to_json()}

    @classmethod
    def from_json(cls, field: Field, data) -> "TautTriple":
        if not isinstance(data, dict) or any(k not in data for k in ("f1", "f2", "f3")):
            raise ParseError("triple JSON needs keys f1, f2, f3")
        return cls(*(Matrix.from_json(field, data[k]) for k in ("f1", "f2", "f3")))


@dataclass(frozen=True)
class TautDecomposition:
    sigma: tuple[int, ...]
    lam: tuple[Element, ...]
    mu: tuple[Element, ...]

    def to_json(self) -> dict:
        return {
            "sigma": [s + 1 for s in self.sigma],
            "lambda": [str(x) for x in self.lam],
            "mu": [str(x) for x in self.mu],
        }


def _require_perfect(A: EvolutionAlgebra):
    if not A.is_perfect():
        raise NotPerfectError("ternary automorphisms are only characterized for perfect algebras")


def make_taut(A: EvolutionAlgebra, sigma: Sequence[int], lam: Sequence, mu: Sequence) -> TautTriple:
    _require_perfect(A)
    F = A.field
    sigma = _check_perm(sigma, A.n)
    lam = tuple(F(x) for x in lam)
    mu = tuple(F(x) for x in mu)
    if len(lam) != A.n or len(mu) != A.n:
        raise InvariantError(f"need {A.n} scalars for lambda and mu")
    f2 = MonomialMap(sigma, lam).matrix(F)
    f3 = MonomialMap(sigma, mu).matrix(F)
    Q = MonomialMap(sigma, tuple(a * b for a, b in zip(lam, mu))).matrix(F)
    f1 = A.M @ Q @ A.M.inverse()
    return TautTriple(f1, f2, f3)


def verify_taut(A: EvolutionAlgebra, t: TautTriple) -> bool:
    """Bijectivity plus ``f1(e_i e_j) == f2(e_i) f3(e_j)`` on all basis pairs."""
    if t.n != A.n:
        raise InvariantError("triple does not match the algebra's dimension")
    if not all(m.is_invertible() for m in t.components()):
        return False
    for i in range(A.n):
        f2e = t.f2.column(i)
        for j in range(A.n):
            rhs = A.multiply(f2e, t.f3.column(j))
            lhs = t.f1.apply(A.square(i)) if i == j else (A.field.zero,) * A.n
            if tuple(lhs) != tuple(rhs):
                return False
    return True


def row_support_condition(f2: Matrix, f3: Matrix) -> bool:
    """``f2[k][i] * f3[k][j] == 0`` for every ``k`` and every ``i != j``."""
    n = f2.nrows
    for k in range(n):
        a = [i for i in range(n) if f2[k, i]]
        b = [j for j in range(n) if f3[k, j]]
        if any(i != j for i in a for j in b):
            return False
    return True


def decompose_taut(A: EvolutionAlgebra, t: TautTriple) -> TautDecomposition:
    _require_perfect(A)
    m2 = MonomialMap.from_matrix(t.f2)
    m3 = MonomialMap.from_matrix(t.f3)
    if m2.sigma != m3.sigma:
        raise PermutationMismatchError(
            f"f2 permutes by {[s + 1 for s in m2.sigma]}, f3 by {[s + 1 for s in m3.sigma]}"
        )
    expected = make_taut(A, m2.sigma, m2.scalars, m3.scalars)
    if expected.f1 != t.f1:
        raise FirstComponentMismatchError("f1 is not the map forced by f2 and f3")
    return TautDecomposition(m2.sigma, m2.scalars, m3.scalars)


def compose_taut(s: TautTriple, t: TautTriple) -> TautTriple:
    """Componentwise ``s o t``."""
    if s.n != t.n:
        raise InvariantError("dimension mismatch")
    return TautTriple(*(a @ b for a, b in zip(s.components(), t.components())))


def invert_taut(t: TautTriple) -> TautTriple:
    return TautTriple(*(a.inverse() for a in t.components()))


def identity_taut(field: Field, n: int) -> TautTriple:
    I = Matrix.identity(field, n)
    return TautTriple(I, I, I)


def sample_taut(
    A: EvolutionAlgebra, rng: random.Random, sigma: Sequence[int] | None = None
) -> tuple[TautTriple, TautDecomposition]:
    _require_perfect(A)
    F = A.field
    if sigma is None:
        sigma = list(range(A.n))
        rng.shuffle(sigma)
    lam = tuple(F.sample(rng, nonzero=True) for _ in range(A.n))
    mu = tuple(F.sample(rng, nonzero=True) for _ in range(A.n))
    return make_taut(A, sigma, lam, mu), TautDecomposition(tuple(sigma), lam, mu)
