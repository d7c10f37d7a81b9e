"""Structured solver for ternary derivations of an evolution algebra.

A ternary derivation is a triple ``(d1, d2, d3)`` of linear maps with
``d1(xy) = d2(x) y + x d3(y)``. Matrices act on coordinate columns:
``d(e_i) = sum_k d[k][i] e_k``.

Splitting the identity over basis pairs gives two independent families of
linear conditions:

* for ``i != j``: ``d2[i][j] * e_i^2 + d3[j][i] * e_j^2 = 0``, a two-unknown
  system per ordered pair that only involves off-diagonal entries;
* ``d1 M = M diag(lam)`` with ``lam[k] = d2[k][k] + d3[k][k]``, solvable iff
  ``lam`` is constant along every dependency among the squares.

:func:`tder_basis` assembles an explicit basis from both families.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .errors import InfeasibleError, InvariantError, NotPerfectError
from .evolalg import EvolutionAlgebra, SquareDecomposition, proportionality, square_analysis
from .field import Element
from .matrix import Matrix, generalized_inverse, left_null_space

# entry reference: ("d2", row, col), 0-indexed
Entry = tuple[str, int, int]


@dataclass(frozen=True)
class TernaryTriple:
    d1: Matrix
    d2: Matrix
    d3: Matrix

    def __post_init__(self):
        shapes = {self.d1.shape, self.d2.shape, self.d3.shape}
        if len(shapes) != 1 or not self.d1.is_square:
            raise InvariantError(f"triple components must share one square shape, got {shapes}")
        if not (self.d1.field == self.d2.field == self.d3.field):
            raise InvariantError("triple components over different fields")

    @property
    def n(self) -> int:
        return self.d1.nrows

    @property
    def field(self):
        return self.d1.field

    def components(self) -> tuple[Matrix, Matrix, Matrix]:
        return self.d1, self.d2, self.d3

    def entry(self, e: Entry) -> Element:
        return getattr(self, e[0])[e[1], e[2]]

    def bracket(self, other: "TernaryTriple") -> "TernaryTriple":
        """Componentwise commutator."""
        return TernaryTriple(*(a.commutator(b) for a, b in zip(self.components(), other.components())))

    def __add__(self, other: "TernaryTriple") -> "TernaryTriple":
        return TernaryTriple(*(a + b for a, b in zip(self.components(), other.components())))

    def scale(self, c) -> "TernaryTriple":
        return TernaryTriple(*(a.scale(c) for a in self.components()))

    def vector(self) -> tuple:
        """Column-major ``vec(d1) || vec(d2) || vec(d3)``."""
        return tuple(m.rows[k][i] for m in self.components() for i in range(self.n) for k in range(self.n))

    @classmethod
    def from_vector(cls, field, n: int, v: Sequence) -> "TernaryTriple":
        mats = []
        for t in range(3):
            block = v[t * n * n:(t + 1) * n * n]
            mats.append(Matrix(field, [[block[i * n + k] for i in range(n)] for k in range(n)]))
        return cls(*mats)

    def to_json(self) -> dict:
        return {"d1": self.d1.to_json(), "d2": self.d2.to_json(), "d3": self.d3.to_json()}

    @classmethod
    def from_json(cls, field, data) -> "TernaryTriple":
        return cls(*(Matrix.from_json(field, data[k]) for k in ("d1", "d2", "d3")))


def verify_tder(A: EvolutionAlgebra, t: TernaryTriple) -> bool:
    """Check the defining identity on every ordered pair of basis vectors."""
    if t.n != A.n or t.field != A.field:
        raise InvariantError("triple does not match the algebra's dimension or field")
    e = [A.basis_vector(i) for i in range(A.n)]
    d2e = [t.d2.column(i) for i in range(A.n)]
    d3e = [t.d3.column(i) for i in range(A.n)]
    for i in range(A.n):
        for j in range(A.n):
            lhs = t.d1.apply(A.multiply(e[i], e[j]))
            rhs = [a + b for a, b in zip(A.multiply(d2e[i], e[j]), A.multiply(e[i], d3e[j]))]
            if list(lhs) != rhs:
                return False
    return True


# --------------------------------------------------------------------------
# off-diagonal conditions


@dataclass(frozen=True)
class EntryStatus:
    kind: str  # "free", "zero" or "linked"
    source: Entry | None = None
    coeff: Element | None = None


FREE = EntryStatus("free")
ZERO = EntryStatus("zero")


@dataclass(frozen=True)
class OffDiagConstraint:
    """Solution set of the two pair systems for basis indices ``i < j``.

    ``case`` is one of ``"proportional"`` (then ``e_i^2 = coeff * e_j^2``),
    ``"zero_nonzero"``, ``"both_zero"`` or ``"independent"``.
    """

    i: int
    j: int
    case: str
    coeff: Element | None
    statuses: dict[Entry, EntryStatus]

    def free_entries(self) -> list[Entry]:
        return [e for e, s in self.statuses.items() if s.kind == "free"]


def _pair_system(ci, cj, u: Entry, v: Entry) -> dict[Entry, EntryStatus]:
    # solve ci*u + cj*v = 0 for scalars u, v given columns ci, cj
    zi, zj = not any(ci), not any(cj)
    if zi and zj:
        return {u: FREE, v: FREE}
    if zi:
        return {u: FREE, v: ZERO}
    if zj:
        return {u: ZERO, v: FREE}
    c = proportionality(ci, cj)
    if c is None:
        return {u: ZERO, v: ZERO}
    # ci = c cj  =>  v = -c u
    return {u: FREE, v: EntryStatus("linked", u, -c)}


def offdiag_constraints(A: EvolutionAlgebra) -> list[OffDiagConstraint]:
    cols = A.M.columns()
    out = []
    for i in range(A.n):
        for j in range(i + 1, A.n):
            ci, cj = cols[i], cols[j]
            statuses = {}
            statuses.update(_pair_system(ci, cj, ("d2", i, j), ("d3", j, i)))
            statuses.update(_pair_system(cj, ci, ("d2", j, i), ("d3", i, j)))
            zi, zj = not any(ci), not any(cj)
            coeff = None
            if zi and zj:
                case = "both_zero"
            elif zi or zj:
                case = "zero_nonzero"
            else:
                coeff = proportionality(ci, cj)
                case = "independent" if coeff is None else "proportional"
            out.append(OffDiagConstraint(i, j, case, coeff, statuses))
    return out


# --------------------------------------------------------------------------
# diagonal classes


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller index stays the representative
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


@dataclass
class DiagClassPartition:
    """Indices whose diagonal sums ``d2[k][k] + d3[k][k]`` are forced equal."""

    n: int
    merges: int = 0
    _uf: UnionFind = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self._uf is None:
            self._uf = UnionFind(self.n)

    def merge(self, a: int, b: int) -> None:
        if self._uf.union(a, b):
            self.merges += 1

    def find(self, k: int) -> int:
        return self._uf.find(k)

    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for k in range(self.n):
            groups.setdefault(self.find(k), []).append(k)
        return sorted(groups.values())

    def respects(self, lam: Sequence) -> bool:
        return all(lam[k] == lam[self.find(k)] for k in range(self.n))


def diag_constraints(A: EvolutionAlgebra, sq: SquareDecomposition | None = None) -> DiagClassPartition:
    sq = square_analysis(A) if sq is None else sq
    part = DiagClassPartition(A.n)
    for i in range(A.n - sq.r):
        for j in range(sq.r):
            if sq.C[j][i]:
                part.merge(sq.perm[j], sq.perm[sq.r + i])
    return part


# --------------------------------------------------------------------------
# first component


@dataclass(frozen=True)
class D1Solution:
    particular: Matrix
    homogeneous_basis: list[Matrix]


def solve_d1(A: EvolutionAlgebra, diag_sum: Sequence, G: Matrix | None = None) -> D1Solution:
    """All ``d1`` with ``d1 M = M diag(diag_sum)``, as particular + span.

    Raises :class:`InfeasibleError` when no such ``d1`` exists.
    """
    if len(diag_sum) != A.n:
        raise InvariantError(f"expected {A.n} diagonal sums, got {len(diag_sum)}")
    F, M = A.field, A.M
    G = generalized_inverse(M) if G is None else G
    MD = M @ Matrix.diag(F, diag_sum)
    particular = MD @ G
    if particular @ M != MD:
        raise InfeasibleError("diagonal sums are not constant on dependent squares")
    homogeneous = []
    nulls = left_null_space(M)
    for row in range(A.n):
        for v in nulls:
            rows = [[F.zero] * A.n for _ in range(A.n)]
            rows[row] = list(v)
            homogeneous.append(Matrix(F, rows))
    return D1Solution(particular, homogeneous)


# --------------------------------------------------------------------------
# assembly


@dataclass
class TderReport:
    offdiag: list[OffDiagConstraint]
    diag_classes: DiagClassPartition
    d1_homogeneous_dim: int
    perfect: bool
    squares: SquareDecomposition


@dataclass
class TderSolution:
    dimension: int
    basis: list[TernaryTriple]
    report: TderReport
    labels: list[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        rep = self.report
        return {
            "dimension": self.dimension,
            "basis": [t.to_json() for t in self.basis],
            "labels": self.labels,
            "report": {
                "perfect": rep.perfect,
                "rank": rep.squares.r,
                "d1_homogeneous_dim": rep.d1_homogeneous_dim,
                "diag_classes": [[k + 1 for k in c] for c in rep.diag_classes.classes()],
                "diag_merges": rep.diag_classes.merges,
                "offdiag": [_constraint_json(c) for c in rep.offdiag],
            },
            "parametrization": render_parametrization(self).splitlines(),
        }


def _entry_name(e: Entry) -> str:
    return f"{e[0]}[{e[1] + 1}][{e[2] + 1}]"


def _constraint_json(c: OffDiagConstraint) -> dict:
    out = {"pair": [c.i + 1, c.j + 1], "case": c.case, "entries": {}}
    if c.coeff is not None:
        out["coeff"] = str(c.coeff)
    for e, s in c.statuses.items():
        if s.kind == "linked":
            out["entries"][_entry_name(e)] = {"linked": _entry_name(s.source), "coeff": str(s.coeff)}
        else:
            out["entries"][_entry_name(e)] = s.kind
    return out


def tder_basis(A: EvolutionAlgebra) -> TderSolution:
    F, n = A.field, A.n
    sq = square_analysis(A)
    offdiag = offdiag_constraints(A)
    part = diag_constraints(A, sq)
    G = generalized_inverse(A.M)
    zero = Matrix.zeros(F, n)
    basis: list[TernaryTriple] = []
    labels: list[str] = []

    # off-diagonal parameters: d1 = 0, diagonals 0
    for c in offdiag:
        for e in c.free_entries():
            mats = {"d2": [[F.zero] * n for _ in range(n)], "d3": [[F.zero] * n for _ in range(n)]}
            mats[e[0]][e[1]][e[2]] = F.one
            for f, s in c.statuses.items():
                if s.kind == "linked" and s.source == e:
                    mats[f[0]][f[1]][f[2]] = s.coeff
            basis.append(TernaryTriple(zero, Matrix(F, mats["d2"]), Matrix(F, mats["d3"])))
            labels.append(f"{_entry_name(e)} free")

    # diagonal parameters, one class at a time
    for cls in part.classes():
        lam = [F.one if k in cls else F.zero for k in range(n)]
        d1 = solve_d1(A, lam, G).particular
        basis.append(TernaryTriple(d1, Matrix.diag(F, lam), zero))
        labels.append("lambda on class {" + ",".join(str(k + 1) for k in cls) + "} via d2")
        for k in cls:
            d2 = Matrix.diag(F, [F.one if (t in cls and t != k) else F.zero for t in range(n)])
            d3 = Matrix.diag(F, [F.one if t == k else F.zero for t in range(n)])
            basis.append(TernaryTriple(d1, d2, d3))
            labels.append(f"d3[{k + 1}][{k + 1}] = 1, rest of class via d2")

    homogeneous = solve_d1(A, [F.zero] * n, G).homogeneous_basis
    for idx, h in enumerate(homogeneous):
        basis.append(TernaryTriple(h, zero, zero))
        labels.append(f"d1 kernel generator {idx + 1}")

    report = TderReport(offdiag, part, len(homogeneous), sq.r == n, sq)
    return TderSolution(len(basis), basis, report, labels)


def expected_dimension(A: EvolutionAlgebra) -> int:
    """``2n - merges + free off-diagonal parameters + n(n - r)``."""
    sq = square_analysis(A)
    part = diag_constraints(A, sq)
    free = sum(len(c.free_entries()) for c in offdiag_constraints(A))
    return 2 * A.n - part.merges + free + A.n * (A.n - sq.r)


def satisfies_constraints(A: EvolutionAlgebra, sol: TderSolution, t: TernaryTriple) -> bool:
    """Does ``t`` obey every condition recorded in ``sol.report``?"""
    for c in sol.report.offdiag:
        for e, s in c.statuses.items():
            x = t.entry(e)
            if s.kind == "zero" and x:
                return False
            if s.kind == "linked" and x != s.coeff * t.entry(s.source):
                return False
    lam = [t.d2[k, k] + t.d3[k, k] for k in range(A.n)]
    if not sol.report.diag_classes.respects(lam):
        return False
    return t.d1 @ A.M == A.M @ Matrix.diag(A.field, lam)


def tder_perfect_triple(A: EvolutionAlgebra, diag2: Sequence, diag3: Sequence) -> TernaryTriple:
    """The derivation with diagonal ``d2``, ``d3`` and ``d1 = M diag(diag2 + diag3) M^-1``."""
    if not A.is_perfect():
        raise NotPerfectError("structure matrix is singular")
    F = A.field
    lam = [F(a) + F(b) for a, b in zip(diag2, diag3)]
    d1 = A.M @ Matrix.diag(F, lam) @ A.M.inverse()
    return TernaryTriple(d1, Matrix.diag(F, diag2), Matrix.diag(F, diag3))


def render_parametrization(sol: TderSolution) -> str:
    """Plain-text listing of entry statuses and diagonal merges (1-indexed)."""
    lines = []
    for c in sol.report.offdiag:
        for e, s in c.statuses.items():
            if s.kind == "linked":
                lines.append(f"{_entry_name(e)} = {s.coeff}*{_entry_name(s.source)}")
            else:
                lines.append(f"{_entry_name(e)} {s.kind}")
    for cls in sol.report.diag_classes.classes():
        if len(cls) > 1:
            lines.append(" = ".join(f"lambda{k + 1}" for k in cls))
    n = sol.report.squares.n
    if sol.report.perfect:
        lines.append("d1 = M diag(lambda) M^-1")
    else:
        lines.append(
            f"d1 = M diag(lambda) G + K, K M = 0 ({sol.report.d1_homogeneous_dim} free of {n * n})"
        )
    return "\n".join(lines)
