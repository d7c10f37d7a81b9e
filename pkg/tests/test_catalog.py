import itertools
from fractions import Fraction

import pytest

from ternalg import catalog
from ternalg.errors import InvariantError
from ternalg.field import GF, QQ
from ternalg.matrix import Matrix
from ternalg.oracle import compare_tder, oracle_tder
from ternalg.tder import tder_basis

SWEEP = [Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2)]


def test_instantiate():
    A = catalog.instantiate("A2a", {"alpha": 1}, QQ)
    assert A.M == Matrix(QQ, [[0, 1], [1, 0]])
    assert catalog.instantiate("A5", None, QQ).M == Matrix(QQ, [[1, -1], [-1, 1]])
    assert catalog.instantiate("A5ab", {"alpha": "1/2", "beta": 3}, GF(7)).M == Matrix(GF(7), [[1, 4], [3, 1]])


@pytest.mark.parametrize("name, params", [
    ("A5ab", {"alpha": 1, "beta": 1}),
    ("A5ab", {"alpha": 2, "beta": Fraction(1, 2)}),
    ("A2a", {"alpha": 0}),
    ("A8a", {}),
    ("B1", {}),
])
def test_instantiate_rejects(name, params):
    with pytest.raises(InvariantError):
        catalog.instantiate(name, params, QQ)


def test_alpha_beta_one_mod_p():
    with pytest.raises(InvariantError):
        catalog.instantiate("A5ab", {"alpha": 2, "beta": 4}, GF(7))


def test_expected_dimensions():
    dims = {n: catalog.expected_tder(n, {"alpha": 2, "beta": 3}, QQ).dimension for n in catalog.NAMES}
    assert dims == {"A0": 12, "A1": 4, "A2a": 4, "A3a": 4, "A4a": 4, "A5ab": 4,
                    "A5": 7, "A6": 8, "A7": 8, "A8a": 7}


def test_expected_A4a_form():
    exp = catalog.expected_tder("A4a", {"alpha": 5}, QQ)
    labels = [r.label for r in exp.relations]
    assert "x21 = -1*lambda + 1*mu" in labels


def _cases():
    for F in (QQ, GF(7)):
        for name in catalog.NAMES:
            needed = catalog._PARAMS[name]
            for a, b in itertools.product(SWEEP, SWEEP if "beta" in needed else [Fraction(3)]):
                if "alpha" not in needed and a != SWEEP[0]:
                    continue
                yield F, name, a, b


@pytest.mark.parametrize("F, name, a, b", list(_cases()))
def test_sweep(F, name, a, b):
    params = {"alpha": a, "beta": b}
    try:
        A = catalog.instantiate(name, params, F)
    except InvariantError:
        pytest.skip("parameters excluded for this entry")
    exp = catalog.expected_tder(name, params, F)
    sol = tder_basis(A)
    assert exp.failures(sol) == []
    assert compare_tder(A, sol).passed
    # the printed relations also hold on the independent oracle basis
    assert exp.triple_failures(oracle_tder(A).basis) == []


def test_fixture_catches_wrong_relation():
    # the printed A5ab entry would fail against the computed basis
    a, b = QQ(2), QQ(3)
    g = a * b
    s = 1 / (g - 1)
    wrong = catalog.Relation("printed x21", ((("d1", 1, 0), 1), ("lambda", -b * s), ("mu", -b * s)))
    sol = tder_basis(catalog.instantiate("A5ab", {"alpha": a, "beta": b}, QQ))
    assert any(wrong.evaluate(t) for t in sol.basis)


def test_catalog_json():
    out = catalog.catalog_json({"alpha": 2, "beta": 3}, QQ)
    assert [e["name"] for e in out] == list(catalog.NAMES)
    assert out[9]["structure_matrix"] == [["1", "2"], ["0", "0"]]
    assert out[0]["expected_dimension"] == 12
