import itertools
import random

import pytest

from ternalg import catalog
from ternalg.errors import InvariantError, OracleBoundError
from ternalg.evolalg import EvolutionAlgebra
from ternalg.field import GF, QQ
from ternalg.matrix import Matrix
from ternalg.oracle import compare_tder, enumerate_taut_pairs, oracle_system, oracle_tder, triple_residual
from ternalg.sampling import KINDS, random_algebra
from ternalg.taut import MonomialMap
from ternalg.tder import TernaryTriple, tder_basis, verify_tder

from conftest import table


def test_oracle_dimensions():
    assert oracle_tder(table("A1")).dimension == 4
    assert oracle_tder(table("A0")).dimension == 12
    assert oracle_tder(table("A6")).dimension == 8


def test_oracle_system_shape():
    S = oracle_system(table("A5"))
    assert S.shape == (8, 12)


def test_oracle_basis_verifies(field):
    rng = random.Random(31)
    for t in range(8):
        A = random_algebra(rng, field, rng.randint(1, 3), KINDS[t % 4])
        for b in oracle_tder(A).basis:
            assert verify_tder(A, b)
            assert not any(triple_residual(A, b))


def test_oracle_bound():
    A = EvolutionAlgebra(QQ, Matrix.identity(QQ, 7))
    with pytest.raises(OracleBoundError):
        oracle_tder(A)
    assert oracle_tder(table("A1"), max_n=2).dimension == 4
    with pytest.raises(OracleBoundError):
        oracle_tder(table("A1"), max_n=1)


def test_oracle_permutation_invariance(field):
    rng = random.Random(41)
    for t in range(6):
        A = random_algebra(rng, field, 3, KINDS[t % 4])
        perm = list(range(3))
        rng.shuffle(perm)
        assert oracle_tder(A).dimension == oracle_tder(A.relabel(perm)).dimension


def test_compare_table():
    for name in catalog.NAMES:
        assert compare_tder(table(name)).passed


def test_compare_negative_control():
    A = table("A8a")
    sol = tder_basis(A)
    bad = sol.basis[0]
    sol.basis[0] = TernaryTriple(bad.d1.with_entry(1, 0, bad.d1[1, 0] + 1), bad.d2, bad.d3)
    rep = compare_tder(A, sol)
    assert not rep.passed and not rep.structured_in_oracle
    assert "residual" in rep.first_failure


def test_compare_detects_missing_generator():
    A = table("A5")
    sol = tder_basis(A)
    sol.basis.pop()
    sol.dimension -= 1
    rep = compare_tder(A, sol)
    assert not rep.dimensions_equal and not rep.passed


def monomial_pairs(F, n):
    # structured prediction: same permutation, any nonzero scalars
    nz = [F(x) for x in range(1, F.p)]
    out = set()
    for sigma in itertools.permutations(range(n)):
        for lam in itertools.product(nz, repeat=n):
            for mu in itertools.product(nz, repeat=n):
                out.add((MonomialMap(sigma, lam).matrix(F), MonomialMap(sigma, mu).matrix(F)))
    return out


@pytest.mark.parametrize("p, expected", [(3, 32), (2, 2)])
def test_enumerate_A1(p, expected):
    F = GF(p)
    res = enumerate_taut_pairs(table("A1", F=F))
    assert res.count == expected
    assert set(res.pairs) == monomial_pairs(F, 2)


def test_enumerate_n1():
    for w in (1, 2):
        assert enumerate_taut_pairs(EvolutionAlgebra.from_rows(GF(3), [[w]])).count == 4


def test_enumerate_other_perfect_classes():
    F = GF(3)
    for name in ("A2a", "A3a", "A4a"):
        res = enumerate_taut_pairs(table(name, alpha=1, F=F))
        assert res.count == 32 and set(res.pairs) == monomial_pairs(F, 2)


def test_enumerate_n3_gf2():
    A = EvolutionAlgebra(GF(2), Matrix(GF(2), [[1, 1, 0], [0, 1, 0], [1, 0, 1]]))
    assert A.is_perfect()
    res = enumerate_taut_pairs(A)
    assert res.count == 6 and set(res.pairs) == monomial_pairs(GF(2), 3)


def test_enumerate_guards():
    with pytest.raises(OracleBoundError):
        enumerate_taut_pairs(EvolutionAlgebra(GF(3), Matrix.identity(GF(3), 3)))
    with pytest.raises(InvariantError):
        enumerate_taut_pairs(table("A1"))


from hypothesis import given, settings, strategies as st

from ternalg.tder import expected_dimension


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_dimension_formula_matches_oracle_gf5(rows):
    A = EvolutionAlgebra(GF(5), Matrix(GF(5), rows))
    assert expected_dimension(A) == tder_basis(A).dimension == oracle_tder(A).dimension
