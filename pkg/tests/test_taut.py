import itertools
import random
from fractions import Fraction

import pytest

from ternalg import catalog
from ternalg.errors import (
    FirstComponentMismatchError,
    InvariantError,
    NotMonomialError,
    NotPerfectError,
    PermutationMismatchError,
)
from ternalg.field import GF, QQ
from ternalg.matrix import Matrix
from ternalg.sampling import random_perfect_algebra
from ternalg.taut import (
    MonomialMap,
    TautTriple,
    compose_taut,
    decompose_taut,
    identity_taut,
    invert_taut,
    make_taut,
    row_support_condition,
    sample_taut,
    verify_taut,
)

from conftest import table


def test_make_taut_A1():
    t = make_taut(table("A1"), [0, 1], [2, 3], [5, 7])
    assert t.f2 == Matrix.diag(QQ, [2, 3])
    assert t.f3 == Matrix.diag(QQ, [5, 7])
    assert t.f1 == Matrix.diag(QQ, [10, 21])
    assert verify_taut(table("A1"), t)


def test_make_taut_identity(field):
    A = random_perfect_algebra(random.Random(1), field, 3)
    assert make_taut(A, [0, 1, 2], [1, 1, 1], [1, 1, 1]) == identity_taut(field, 3)


def test_make_taut_A2a():
    a, b, c, d = (Fraction(x) for x in (2, 3, 5, 7))
    t = make_taut(table("A2a", alpha=4), [0, 1], [a, b], [c, d])
    # e1^2 = e2 forces f1(e2) = ac e2; e2^2 = alpha e1 forces f1(e1) = bd e1
    assert t.f1 == Matrix.diag(QQ, [b * d, a * c])


def test_make_taut_errors():
    with pytest.raises(NotPerfectError):
        make_taut(table("A0"), [0, 1], [1, 1], [1, 1])
    with pytest.raises(InvariantError):
        make_taut(table("A1"), [0, 1], [0, 1], [1, 1])
    with pytest.raises(InvariantError):
        make_taut(table("A1"), [0, 0], [1, 1], [1, 1])


def test_verify_rejects():
    A = table("A1")
    I = Matrix.identity(QQ, 2)
    assert not verify_taut(A, TautTriple(I, I, I.scale(2)))
    f2 = Matrix(QQ, [[1, 1], [0, 1]])
    f1 = Matrix(QQ, [[2, 1], [1, 1]])
    assert not row_support_condition(f2, I)
    assert not verify_taut(A, TautTriple(f1, f2, I))
    Z = Matrix.zeros(QQ, 2)
    assert not verify_taut(A, TautTriple(Z, Z, Z))


@pytest.mark.parametrize("name", catalog.PERFECT)
def test_make_verify_decompose(name):
    A = table(name)
    rng = random.Random(hash(name) % 1000)
    for _ in range(20):
        t, dec = sample_taut(A, rng)
        assert verify_taut(A, t)
        assert decompose_taut(A, t) == dec


def test_transposition_on_A1():
    A = table("A1")
    t = make_taut(A, [1, 0], [1, 1], [1, 1])
    P = Matrix(QQ, [[0, 1], [1, 0]])
    assert t.f1 == t.f2 == t.f3 == P


def test_two_components_n2():
    A = table("A3a")
    sigmas = {decompose_taut(A, sample_taut(A, random.Random(s))[0]).sigma for s in range(40)}
    assert sigmas == {(0, 1), (1, 0)}


def test_decompose_errors():
    A = table("A1")
    I = Matrix.identity(QQ, 2)
    P = Matrix(QQ, [[0, 1], [1, 0]])
    with pytest.raises(NotMonomialError):
        decompose_taut(A, TautTriple(I, Matrix(QQ, [[1, 1], [0, 1]]), I))
    with pytest.raises(PermutationMismatchError):
        decompose_taut(A, TautTriple(I, I, P))
    with pytest.raises(FirstComponentMismatchError):
        decompose_taut(A, TautTriple(I.scale(2), I, I))
    with pytest.raises(NotPerfectError):
        decompose_taut(table("A5"), TautTriple(I, I, I))


def test_monomial_roundtrip(field):
    m = MonomialMap((2, 0, 1), (field(1), field(2), field(3)))
    assert MonomialMap.from_matrix(m.matrix(field)) == m


def test_compose_monomial_rule():
    A = table("A4a")
    s = (1, 0)
    tau = (1, 0)
    l1, m1 = [QQ(2), QQ(3)], [QQ(5), QQ(7)]
    l2, m2 = [QQ(11), QQ(13)], [QQ(17), QQ(19)]
    st = compose_taut(make_taut(A, s, l1, m1), make_taut(A, tau, l2, m2))
    # (s o tau)(e_i) = l2_i * l1_{tau(i)} e_{s(tau(i))}
    comp = tuple(s[tau[i]] for i in range(2))
    lam = [l2[i] * l1[tau[i]] for i in range(2)]
    mu = [m2[i] * m1[tau[i]] for i in range(2)]
    assert st == make_taut(A, comp, lam, mu)


def test_group_laws(field):
    rng = random.Random(21)
    A = random_perfect_algebra(rng, field, 3)
    ts = [sample_taut(A, rng)[0] for _ in range(3)]
    a, b, c = ts
    assert compose_taut(compose_taut(a, b), c) == compose_taut(a, compose_taut(b, c))
    assert compose_taut(a, invert_taut(a)) == identity_taut(field, 3)
    assert compose_taut(invert_taut(a), a) == identity_taut(field, 3)
    assert verify_taut(A, compose_taut(a, b))
    assert verify_taut(A, invert_taut(c))


def test_triple_json(field):
    A = random_perfect_algebra(random.Random(3), field, 2)
    t, _ = sample_taut(A, random.Random(4))
    assert TautTriple.from_json(field, t.to_json()) == t


def test_sigma_fixed_sample():
    A = table("A1")
    t, dec = sample_taut(A, random.Random(0), sigma=[1, 0])
    assert dec.sigma == (1, 0)
    assert dec.to_json()["sigma"] == [2, 1]
