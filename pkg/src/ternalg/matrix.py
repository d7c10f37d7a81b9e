"""Dense exact matrices over a :class:`~ternalg.field.Field`.

Entries are stored row-major as a tuple of row tuples. Matrices are treated
as immutable; every operation returns a new matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvariantError, ParseError
from .field import Element, Field


class Matrix:
    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, rows: Iterable[Iterable], ncols: int | None = None):
        self.field = field
        self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        if any(len(r) != ncols for r in self.rows):
            raise InvariantError("ragged matrix rows")

    # construction -----------------------------------------------------------

    @classmethod
    def _raw(cls, field: Field, rows, ncols: int) -> "Matrix":
        # rows are already field elements
        m = object.__new__(cls)
        m.field = field
        m.rows = tuple(tuple(r) for r in rows)
        m.nrows = len(m.rows)
        m.ncols = ncols
        return m

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int | None = None) -> "Matrix":
        ncols = nrows if ncols is None else ncols
        z = field.zero
        return cls._raw(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        z, o = field.zero, field.one
        return cls._raw(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    @classmethod
    def diag(cls, field: Field, values: Sequence) -> "Matrix":
        n = len(values)
        z = field.zero
        return cls._raw(
            field, [[field(values[i]) if i == j else z for j in range(n)] for i in range(n)], n
        )

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int | None = None) -> "Matrix":
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls(field, [[col[k] for col in columns] for k in range(nrows)], len(columns))

    @classmethod
    def permutation(cls, field: Field, perm: Sequence[int]) -> "Matrix":
        """Matrix sending basis vector ``e_i`` to ``e_perm[i]``."""
        n = len(perm)
        z, o = field.zero, field.one
        rows = [[z] * n for _ in range(n)]
        for i, k in enumerate(perm):
            rows[k][i] = o
        return cls._raw(field, rows, n)

    # access -----------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, idx):
        k, i = idx
        return self.rows[k][i]

    def row(self, k: int) -> tuple:
        return self.rows[k]

    def column(self, i: int) -> tuple:
        return tuple(r[i] for r in self.rows)

    def columns(self) -> list[tuple]:
        return [self.column(i) for i in range(self.ncols)]

    def entries(self) -> list:
        """Row-major flat list."""
        return [x for r in self.rows for x in r]

    def with_entry(self, k: int, i: int, value) -> "Matrix":
        rows = [list(r) for r in self.rows]
        rows[k][i] = self.field(value)
        return Matrix._raw(self.field, rows, self.ncols)

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_diagonal(self) -> bool:
        return all(not self.rows[k][i] for k in range(self.nrows) for i in range(self.ncols) if k != i)

    # arithmetic -------------------------------------------------------------

    def _check_same(self, other: "Matrix"):
        if self.field != other.field:
            raise InvariantError(f"field mismatch: {self.field!r} vs {other.field!r}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise InvariantError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix._raw(
            self.field, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise InvariantError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix._raw(
            self.field, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(self.field, [[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(self.field, [[c * a for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        if self.ncols != other.nrows:
            raise InvariantError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.field.zero
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(t, a) for t, a in enumerate(r) if a]
            out.append([sum((a * c[t] for t, a in nz), zero) for c in cols])
        return Matrix._raw(self.field, out, other.ncols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product ``self @ v``."""
        if len(v) != self.ncols:
            raise InvariantError(f"vector length {len(v)} != {self.ncols} columns")
        zero = self.field.zero
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self.rows)

    def rapply(self, v: Sequence) -> tuple:
        """Row-vector product ``v @ self``."""
        if len(v) != self.nrows:
            raise InvariantError(f"vector length {len(v)} != {self.nrows} rows")
        zero = self.field.zero
        out = [zero] * self.ncols
        for a, r in zip(v, self.rows):
            if a:
                for i, b in enumerate(r):
                    if b:
                        out[i] = out[i] + a * b
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix._raw(self.field, [list(c) for c in zip(*self.rows)] if self.nrows else [], self.nrows)

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.field, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix({self.field!r}, [{body}])"

    # linear algebra ---------------------------------------------------------

    def rref(self, transform: bool = True) -> "RrefResult":
        return rref(self, transform)

    def rank(self) -> int:
        return rref(self, transform=False).rank

    def determinant(self) -> Element:
        return determinant(self)

    def inverse(self) -> "Matrix":
        return inverse(self)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.nrows

    # serialization ----------------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self.rows]

    @classmethod
    def from_json(cls, field: Field, data) -> "Matrix":
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ParseError("matrix must be an array of arrays")
        if not data:
            raise ParseError("empty matrix")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ParseError("ragged matrix rows")
        return cls._raw(field, [[field.parse(x) for x in r] for r in data], ncols)


@dataclass(frozen=True)
class RrefResult:
    R: Matrix
    T: Matrix | None
    rank: int
    pivot_cols: tuple[int, ...]


def rref(M: Matrix, transform: bool = True) -> RrefResult:
    """Gauss-Jordan elimination. When ``transform`` is set, ``T @ M == R``.

    The pivot in each column is the first nonzero entry at or below the
    current row; no magnitude-based pivoting is needed over an exact field.
    """
    F = M.field
    m, n = M.shape
    width = n + (m if transform else 0)
    zero, one = F.zero, F.one
    rows = []
    for k, r in enumerate(M.rows):
        row = list(r)
        if transform:
            row.extend(one if t == k else zero for t in range(m))
        rows.append(row)

    pivots = []
    prow = 0
    for col in range(n):
        if prow == m:
            break
        sel = next((k for k in range(prow, m) if rows[k][col]), None)
        if sel is None:
            continue
        rows[prow], rows[sel] = rows[sel], rows[prow]
        piv = rows[prow]
        inv = 1 / piv[col]
        if inv != 1:
            piv = [x * inv if x else x for x in piv]
            rows[prow] = piv
        support = [c for c in range(col, width) if piv[c]]
        for k in range(m):
            if k == prow:
                continue
            f = rows[k][col]
            if not f:
                continue
            row = rows[k]
            for c in support:
                row[c] = row[c] - f * piv[c]
        pivots.append(col)
        prow += 1

    R = Matrix._raw(F, [r[:n] for r in rows], n)
    T = Matrix._raw(F, [r[n:] for r in rows], m) if transform else None
    return RrefResult(R, T, len(pivots), tuple(pivots))


def determinant(M: Matrix) -> Element:
    if not M.is_square:
        raise InvariantError(f"determinant of non-square {M.shape} matrix")
    F = M.field
    rows = [list(r) for r in M.rows]
    n = M.nrows
    det = F.one
    for col in range(n):
        sel = next((k for k in range(col, n) if rows[k][col]), None)
        if sel is None:
            return F.zero
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            det = -det
        piv = rows[col]
        det = det * piv[col]
        inv = 1 / piv[col]
        for k in range(col + 1, n):
            f = rows[k][col]
            if f:
                f = f * inv
                row = rows[k]
                for c in range(col, n):
                    if piv[c]:
                        row[c] = row[c] - f * piv[c]
    return det


def inverse(M: Matrix) -> Matrix:
    if not M.is_square:
        raise InvariantError(f"inverse of non-square {M.shape} matrix")
    res = rref(M)
    if res.rank != M.nrows:
        raise ZeroDivisionError("matrix is singular")
    return res.T


def right_null_space(M: Matrix) -> list[tuple]:
    """Basis of ``{v : M v = 0}``, one vector per free column of the RREF."""
    res = rref(M, transform=False)
    F = M.field
    free = [c for c in range(M.ncols) if c not in res.pivot_cols]
    basis = []
    for f in free:
        v = [F.zero] * M.ncols
        v[f] = F.one
        for k, p in enumerate(res.pivot_cols):
            v[p] = -res.R[k, f]
        basis.append(tuple(v))
    return basis


def left_null_space(M: Matrix) -> list[tuple]:
    """Basis of ``{v : v M = 0}``: the rows of T below the rank."""
    res = rref(M)
    return [res.T.row(k) for k in range(res.rank, M.nrows)]


def pivot_first_permutation(M: Matrix) -> tuple[int, ...]:
    """Column order placing the RREF pivot columns first, then the rest in index order."""
    piv = rref(M, transform=False).pivot_cols
    return piv + tuple(c for c in range(M.ncols) if c not in piv)


def generalized_inverse(M: Matrix) -> Matrix:
    """A matrix ``G`` with ``M G M == M``; invertible, deterministic.

    With ``P`` the permutation putting pivot columns first, ``M P`` row-reduces
    to ``[[I_r, C], [0, 0]]`` via some invertible ``T``; that block form is
    idempotent, so ``T`` inverts ``M P`` in the weak sense and ``G = P T``
    does the same for ``M``.
    """
    if not M.is_square:
        raise InvariantError(f"generalized inverse of non-square {M.shape} matrix")
    perm = pivot_first_permutation(M)
    MP = Matrix._raw(M.field, [[r[c] for c in perm] for r in M.rows], M.ncols)
    T = rref(MP).T
    # P[perm[k]][k] = 1, so (P T)[perm[k]] = T[k]
    rows = [None] * M.nrows
    for k, c in enumerate(perm):
        rows[c] = T.row(k)
    return Matrix._raw(M.field, rows, M.ncols)
