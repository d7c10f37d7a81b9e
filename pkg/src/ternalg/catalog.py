"""The ten two-dimensional structure matrices and their known derivation spaces.

Entry names: A0, A1, A2a, A3a, A4a, A5ab, A5, A6, A7, A8a. Parameters are
``alpha`` and ``beta`` (nonzero; ``alpha * beta != 1`` for A5ab).

Each entry's expected derivation space is stored as a set of linear
relations that must vanish on every derivation, plus the dimension and the
number of forced diagonal merges. Relation keys are ``("d1", k, i)``-style
entries (0-indexed) or ``"lambda"`` / ``"mu"`` for the two diagonal sums
``d2[k][k] + d3[k][k]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .errors import InvariantError
from .evolalg import EvolutionAlgebra
from .field import Field
from .matrix import Matrix
from .tder import TderSolution, TernaryTriple

NAMES = ("A0", "A1", "A2a", "A3a", "A4a", "A5ab", "A5", "A6", "A7", "A8a")
PERFECT = ("A1", "A2a", "A3a", "A4a", "A5ab")

_PARAMS = {
    "A0": (), "A1": (), "A2a": ("alpha",), "A3a": ("alpha",), "A4a": ("alpha",),
    "A5ab": ("alpha", "beta"), "A5": (), "A6": (), "A7": (), "A8a": ("alpha",),
}

_MATRICES: dict[str, Callable] = {
    "A0": lambda a, b: [[0, 0], [0, 0]],
    "A1": lambda a, b: [[1, 0], [0, 1]],
    "A2a": lambda a, b: [[0, a], [1, 0]],
    "A3a": lambda a, b: [[1, a], [0, 1]],
    "A4a": lambda a, b: [[0, 1], [a, 1]],
    "A5ab": lambda a, b: [[1, a], [b, 1]],
    "A5": lambda a, b: [[1, -1], [-1, 1]],
    "A6": lambda a, b: [[0, 1], [0, 0]],
    "A7": lambda a, b: [[1, 0], [0, 0]],
    "A8a": lambda a, b: [[1, a], [0, 0]],
}


def _x(k, i):
    return ("d1", k - 1, i - 1)


def _y(k, i):
    return ("d2", k - 1, i - 1)


def _z(k, i):
    return ("d3", k - 1, i - 1)


@dataclass(frozen=True)
class Relation:
    label: str
    terms: tuple  # ((key, coeff), ...), sum must vanish

    def evaluate(self, t: TernaryTriple):
        total = t.field.zero
        for key, c in self.terms:
            if key == "lambda":
                v = t.d2[0, 0] + t.d3[0, 0]
            elif key == "mu":
                v = t.d2[1, 1] + t.d3[1, 1]
            else:
                v = t.entry(key)
            total = total + c * v
        return total


@dataclass
class ExpectedTder:
    name: str
    dimension: int
    merges: int
    relations: list[Relation]
    note: str | None = None

    def failures(self, sol: TderSolution) -> list[str]:
        out = []
        if sol.dimension != self.dimension:
            out.append(f"{self.name}: dimension {sol.dimension}, expected {self.dimension}")
        if sol.report.diag_classes.merges != self.merges:
            out.append(f"{self.name}: {sol.report.diag_classes.merges} diagonal merges, expected {self.merges}")
        out.extend(self.triple_failures(sol.basis))
        return out

    def triple_failures(self, triples) -> list[str]:
        out = []
        for rel in self.relations:
            for idx, t in enumerate(triples):
                if rel.evaluate(t):
                    out.append(f"{self.name}: relation '{rel.label}' fails on triple {idx}")
                    break
        return out

    def check(self, sol: TderSolution) -> bool:
        return not self.failures(sol)


def _params(name: str, params: dict | None, field: Field):
    if name not in _MATRICES:
        raise InvariantError(f"unknown catalogue entry {name!r}")
    params = params or {}
    vals = {}
    for p in _PARAMS[name]:
        if p not in params:
            raise InvariantError(f"{name} needs parameter {p}")
        v = field(params[p])
        if not v:
            raise InvariantError(f"{name}: {p} must be nonzero")
        vals[p] = v
    if name == "A5ab" and vals["alpha"] * vals["beta"] == 1:
        raise InvariantError("A5ab: alpha * beta must differ from 1")
    return vals.get("alpha"), vals.get("beta")


def instantiate(name: str, params: dict | None, field: Field) -> EvolutionAlgebra:
    a, b = _params(name, params, field)
    return EvolutionAlgebra(field, Matrix(field, _MATRICES[name](a, b)))


def _rel(label, *terms):
    return Relation(label, tuple(terms))


def _diag_d2_d3():
    return [
        _rel("y12 = 0", (_y(1, 2), 1)), _rel("y21 = 0", (_y(2, 1), 1)),
        _rel("z12 = 0", (_z(1, 2), 1)), _rel("z21 = 0", (_z(2, 1), 1)),
    ]


def _d1_closed_form(entries) -> list[Relation]:
    # entries: {(k, i): ((lambda coeff), (mu coeff))}, x_ki = a*lambda + b*mu
    out = []
    for (k, i), (a, b) in entries.items():
        out.append(_rel(f"x{k}{i} = {a}*lambda + {b}*mu", (_x(k, i), 1), ("lambda", -a), ("mu", -b)))
    return out


def expected_tder(name: str, params: dict | None, field: Field) -> ExpectedTder:
    a, b = _params(name, params, field)
    one, zero = field.one, field.zero
    if name == "A0":
        return ExpectedTder(name, 12, 0, [])
    if name == "A1":
        form = {(1, 1): (one, zero), (1, 2): (zero, zero), (2, 1): (zero, zero), (2, 2): (zero, one)}
        return ExpectedTder(name, 4, 0, _diag_d2_d3() + _d1_closed_form(form))
    if name == "A2a":
        form = {(1, 1): (zero, one), (1, 2): (zero, zero), (2, 1): (zero, zero), (2, 2): (one, zero)}
        return ExpectedTder(name, 4, 0, _diag_d2_d3() + _d1_closed_form(form))
    if name == "A3a":
        form = {(1, 1): (one, zero), (1, 2): (-a, a), (2, 1): (zero, zero), (2, 2): (zero, one)}
        return ExpectedTder(name, 4, 0, _diag_d2_d3() + _d1_closed_form(form))
    if name == "A4a":
        form = {(1, 1): (zero, one), (1, 2): (zero, zero), (2, 1): (-one, one), (2, 2): (one, zero)}
        return ExpectedTder(name, 4, 0, _diag_d2_d3() + _d1_closed_form(form))
    if name == "A5ab":
        g = a * b
        s = one / (g - 1)
        form = {
            (1, 1): (-s, g * s),
            (1, 2): (a * s, -a * s),
            (2, 1): (-b * s, b * s),
            (2, 2): (g * s, -s),
        }
        note = "x21 = beta*(mu - lambda)/(gamma - 1); printed as beta*(lambda + mu)"
        return ExpectedTder(name, 4, 0, _diag_d2_d3() + _d1_closed_form(form), note)
    if name == "A5":
        rels = [
            _rel("z12 = y21", (_z(1, 2), 1), (_y(2, 1), -1)),
            _rel("z21 = y12", (_z(2, 1), 1), (_y(1, 2), -1)),
            _rel("lambda = mu", ("lambda", 1), ("mu", -1)),
            _rel("x11 = lambda + x12", (_x(1, 1), 1), ("lambda", -1), (_x(1, 2), -1)),
            _rel("x22 = lambda + x21", (_x(2, 2), 1), ("lambda", -1), (_x(2, 1), -1)),
        ]
        return ExpectedTder(name, 7, 1, rels)
    if name == "A6":
        rels = [
            _rel("y21 = 0", (_y(2, 1), 1)), _rel("z21 = 0", (_z(2, 1), 1)),
            _rel("x21 = 0", (_x(2, 1), 1)), _rel("x11 = mu", (_x(1, 1), 1), ("mu", -1)),
        ]
        return ExpectedTder(name, 8, 0, rels)
    if name == "A7":
        rels = [
            _rel("y12 = 0", (_y(1, 2), 1)), _rel("z12 = 0", (_z(1, 2), 1)),
            _rel("x21 = 0", (_x(2, 1), 1)), _rel("x11 = lambda", (_x(1, 1), 1), ("lambda", -1)),
        ]
        return ExpectedTder(name, 8, 0, rels)
    if name == "A8a":
        rels = [
            _rel("z12 = -alpha*y21", (_z(1, 2), 1), (_y(2, 1), a)),
            _rel("z21 = -y12/alpha", (_z(2, 1), 1), (_y(1, 2), one / a)),
            _rel("x21 = 0", (_x(2, 1), 1)),
            _rel("x11 = lambda", (_x(1, 1), 1), ("lambda", -1)),
            _rel("lambda = mu", ("lambda", 1), ("mu", -1)),
        ]
        return ExpectedTder(name, 7, 1, rels, "lambda = mu is forced although not listed in print")
    raise InvariantError(f"unknown catalogue entry {name!r}")


def catalog_json(params: dict | None, field: Field) -> list[dict]:
    out = []
    for name in NAMES:
        A = instantiate(name, params, field)
        exp = expected_tder(name, params, field)
        entry = {
            "name": name,
            "parameters": {p: field.format(field((params or {})[p])) for p in _PARAMS[name]},
            "structure_matrix": A.M.to_json(),
            "perfect": A.is_perfect(),
            "expected_dimension": exp.dimension,
            "relations": [r.label for r in exp.relations],
        }
        if exp.note:
            entry["note"] = exp.note
        out.append(entry)
    return out
