"""Brute-force reference solvers.

:func:`oracle_tder` writes the derivation identity out as one linear system
in the ``3 n^2`` entries of ``(d1, d2, d3)`` and takes its null space. It only
relies on the algebra product and row reduction, never on the structured
solver it is used to check.

Unknown order: ``vec(d1) || vec(d2) || vec(d3)``, each column-major, so
``d_l[k][i]`` sits at ``l * n^2 + i * n + k``. Equation order: basis pair
``(i, j)`` lexicographic, then output coordinate ``q``.
"""
from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass

from .errors import InvariantError, OracleBoundError
from .evolalg import EvolutionAlgebra
from .field import PrimeField
from .matrix import Matrix, right_null_space
from .tder import TernaryTriple, satisfies_constraints, tder_basis

DEFAULT_MAX_N = 6
ENUMERATION_LIMIT = 10**8


def _residual(A: EvolutionAlgebra, d1: Matrix, d2: Matrix, d3: Matrix) -> list:
    """Coordinates of ``d1(e_i e_j) - d2(e_i) e_j - e_i d3(e_j)`` for all ``i, j``."""
    e = [A.basis_vector(i) for i in range(A.n)]
    out = []
    for i in range(A.n):
        for j in range(A.n):
            lhs = d1.apply(A.multiply(e[i], e[j]))
            r2 = A.multiply(d2.column(i), e[j])
            r3 = A.multiply(e[i], d3.column(j))
            out.extend(a - b - c for a, b, c in zip(lhs, r2, r3))
    return out


def oracle_system(A: EvolutionAlgebra) -> Matrix:
    """The ``n^3 x 3n^2`` coefficient matrix, built column by column from unit triples."""
    F, n = A.field, A.n
    zero = Matrix.zeros(F, n)
    columns = []
    for slot in range(3):
        for i in range(n):
            for k in range(n):
                unit = zero.with_entry(k, i, F.one)
                mats = [zero, zero, zero]
                mats[slot] = unit
                columns.append(_residual(A, *mats))
    return Matrix.from_columns(F, columns, n**3)


@dataclass
class OracleResult:
    dimension: int
    basis: list[TernaryTriple]


def oracle_tder(A: EvolutionAlgebra, max_n: int = DEFAULT_MAX_N) -> OracleResult:
    if A.n > max_n:
        raise OracleBoundError(f"dimension {A.n} exceeds oracle bound {max_n}")
    S = oracle_system(A)
    basis = [TernaryTriple.from_vector(A.field, A.n, v) for v in right_null_space(S)]
    return OracleResult(len(basis), basis)


def triple_residual(A: EvolutionAlgebra, t: TernaryTriple) -> list:
    return _residual(A, t.d1, t.d2, t.d3)


@dataclass
class ConformanceReport:
    structured_dimension: int
    oracle_dimension: int
    dimensions_equal: bool
    structured_independent: bool
    structured_in_oracle: bool
    oracle_satisfies_structured: bool
    first_failure: str | None = None

    @property
    def passed(self) -> bool:
        return (
            self.dimensions_equal
            and self.structured_independent
            and self.structured_in_oracle
            and self.oracle_satisfies_structured
        )

    def to_json(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


def _rank_of_triples(field, triples) -> int:
    if not triples:
        return 0
    return Matrix(field, [t.vector() for t in triples]).rank()


def compare_tder(A: EvolutionAlgebra, solution=None, max_n: int = DEFAULT_MAX_N) -> ConformanceReport:
    """Cross-check the structured basis against the brute-force null space.

    ``solution`` defaults to :func:`tder_basis`; passing a doctored one is how
    the negative controls exercise the residual check.
    """
    sol = tder_basis(A) if solution is None else solution
    orc = oracle_tder(A, max_n)
    failure = None

    in_oracle = True
    for idx, t in enumerate(sol.basis):
        res = triple_residual(A, t)
        bad = next((r for r in res if r), None)
        if bad is not None:
            in_oracle = False
            failure = failure or f"structured basis triple {idx} has residual {bad}"
            break

    satisfies = True
    for idx, t in enumerate(orc.basis):
        if not satisfies_constraints(A, sol, t):
            satisfies = False
            failure = failure or f"oracle basis triple {idx} violates the structured constraints"
            break

    independent = _rank_of_triples(A.field, sol.basis) == len(sol.basis)
    if not independent:
        failure = failure or "structured basis is linearly dependent"
    dims = sol.dimension == orc.dimension
    if not dims:
        failure = failure or f"dimension {sol.dimension} != oracle {orc.dimension}"
    return ConformanceReport(sol.dimension, orc.dimension, dims, independent, in_oracle, satisfies, failure)


# --------------------------------------------------------------------------
# exhaustive ternary automorphisms over tiny prime fields


@dataclass
class TautEnumeration:
    count: int
    pairs: list[tuple[Matrix, Matrix]]
    condition_count: int


def _det_mod(rows, p) -> int:
    a = [list(r) for r in rows]
    n = len(a)
    det = 1
    for c in range(n):
        sel = next((k for k in range(c, n) if a[k][c] % p), None)
        if sel is None:
            return 0
        if sel != c:
            a[c], a[sel] = a[sel], a[c]
            det = -det
        det = det * a[c][c] % p
        inv = pow(a[c][c], -1, p)
        for k in range(c + 1, n):
            f = a[k][c] * inv % p
            if f:
                a[k] = [(x - f * y) % p for x, y in zip(a[k], a[c])]
    return det % p


def _invertible_matrices(n: int, p: int) -> list[tuple[tuple[int, ...], ...]]:
    out = []
    for flat in itertools.product(range(p), repeat=n * n):
        rows = tuple(flat[k * n:(k + 1) * n] for k in range(n))
        if _det_mod(rows, p):
            out.append(rows)
    return out


def _lemma_condition(a, b, n) -> bool:
    for k in range(n):
        for i in range(n):
            if a[k][i]:
                for j in range(n):
                    if j != i and b[k][j]:
                        return False
    return True


def enumerate_taut_pairs(A: EvolutionAlgebra, keep_pairs: bool = True) -> TautEnumeration:
    """All invertible ``(f2, f3)`` that extend to a ternary automorphism.

    Pairs are screened by the row-support condition ``f2[k][i] f3[k][j] = 0``
    (``i != j``); for a perfect algebra the forced ``f1`` (sending ``e_i^2`` to
    ``f2(e_i) f3(e_i)``) must then be invertible and satisfy the identity on
    every basis pair. ``condition_count`` counts pairs passing the screen alone.
    """
    F, n = A.field, A.n
    if not isinstance(F, PrimeField):
        raise InvariantError("enumeration needs a prime field")
    p = F.p
    if p ** (2 * n * n) > ENUMERATION_LIMIT:
        raise OracleBoundError(f"p^(2n^2) = {p}^{2 * n * n} exceeds {ENUMERATION_LIMIT}")
    perfect = A.is_perfect()
    Minv = A.M.inverse() if perfect else None
    mats = _invertible_matrices(n, p)
    pairs = []
    screened = 0
    e = [A.basis_vector(i) for i in range(n)]
    for a in mats:
        for b in mats:
            if not _lemma_condition(a, b, n):
                continue
            screened += 1
            if not perfect:
                continue
            f2, f3 = Matrix(F, a), Matrix(F, b)
            images = [A.multiply(f2.column(i), f3.column(i)) for i in range(n)]
            f1 = Matrix.from_columns(F, images) @ Minv
            if not f1.is_invertible():
                continue
            ok = all(
                tuple(f1.apply(A.multiply(e[i], e[j]))) == A.multiply(f2.column(i), f3.column(j))
                for i in range(n)
                for j in range(n)
            )
            if ok:
                pairs.append((f2, f3))
    return TautEnumeration(len(pairs), pairs if keep_pairs else [], screened)
