"""Dense exact matrices and the linear solvers built on them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .elim import rref_int


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Matrix:
    """``rows`` x ``cols`` matrix with row-major Fraction entries."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(_fr(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = list(columns)
        return cls.from_rows([[c[i] for c in cols] for i in range(rows)], len(cols))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls.diag([1] * n)

    @classmethod
    def diag(cls, values) -> "Matrix":
        values = list(values)
        n = len(values)
        e = [Fraction(0)] * (n * n)
        for i, v in enumerate(values):
            e[i * n + i] = _fr(v)
        return cls(n, n, tuple(e))

    # access ---------------------------------------------------------------
    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c) -> "Matrix":
        c = _fr(c)
        return Matrix(self.rows, self.cols, tuple(c * a for a in self.entries))

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = [other.column(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for c in cols:
                    out.append(sum((a * b for a, b in zip(r, c) if a and b), Fraction(0)))
            return Matrix(self.rows, other.cols, tuple(out))
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product.  ``v`` may hold any ring elements."""
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for {self.rows}x{self.cols} matrix")
        out = []
        for i in range(self.rows):
            acc = 0
            for a, x in zip(self.row(i), v):
                if a and x:
                    acc = acc + a * x
            out.append(acc if not isinstance(acc, int) else Fraction(acc))
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix.from_rows([self.column(j) for j in range(self.cols)], self.rows)

    def power(self, k: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("power of a non-square matrix")
        if k < 0:
            return inverse(self).power(-k)
        out = Matrix.identity(self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __str__(self):
        return "\n".join("[" + ", ".join(str(x) for x in self.row(i)) + "]" for i in range(self.rows))


def block(blocks: Sequence[Sequence[Matrix]]) -> Matrix:
    """Assemble a block matrix from a grid of matrices."""
    rows = []
    for brow in blocks:
        h = brow[0].rows
        for i in range(h):
            r = []
            for b in brow:
                if b.rows != h:
                    raise ValueError("block heights differ")
                r.extend(b.row(i))
            rows.append(r)
    return Matrix.from_rows(rows)


# linear algebra ---------------------------------------------------------------

def _integer_rows(rows):
    out = []
    for r in rows:
        r = [_fr(x) for x in r]
        den = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * den) for x in r])
    return out


def _rows_of(m):
    if isinstance(m, Matrix):
        return m.to_rows(), m.cols
    rows = [list(r) for r in m]
    return rows, (len(rows[0]) if rows else 0)


def row_echelon(m, ncols: int | None = None):
    """Reduced integer echelon basis ``(rows, pivots)`` of the row space."""
    rows, nc = _rows_of(m)
    if ncols is None:
        ncols = nc
    return rref_int(_integer_rows(rows), ncols)


def rank(m, ncols: int | None = None) -> int:
    """Exact row rank over Q.  ``m`` is a Matrix or a list of rows."""
    return len(row_echelon(m, ncols)[1])


def kernel_basis(m, ncols: int | None = None) -> list:
    """Basis of ``{v : m v = 0}`` as tuples of Fractions, one per free column."""
    rows, nc = _rows_of(m)
    if ncols is None:
        ncols = nc
    basis, pivots = rref_int(_integer_rows(rows), ncols)
    pivset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, p in zip(basis, pivots):
            if r[f]:
                v[p] = Fraction(-r[f], r[p])
        out.append(tuple(v))
    return out


def solve(m, b):
    """Some ``x`` with ``m x = b``, or None when the system is inconsistent."""
    rows, nc = _rows_of(m)
    if len(b) != len(rows):
        raise ValueError(f"right-hand side of length {len(b)} for {len(rows)} rows")
    aug = [list(r) + [bi] for r, bi in zip(rows, b)]
    basis, pivots = rref_int(_integer_rows(aug), nc + 1)
    if pivots and pivots[-1] == nc:
        return None
    x = [Fraction(0)] * nc
    for r, p in zip(basis, pivots):
        x[p] = Fraction(r[nc], r[p])
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.row(i)) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    basis, pivots = rref_int(_integer_rows(aug), 2 * n)
    if pivots[:n] != list(range(n)) or (len(pivots) > n):
        raise ZeroDivisionError("matrix is singular")
    return Matrix.from_rows([[Fraction(r[n + j], r[i]) for j in range(n)] for i, r in enumerate(basis)])


def is_invertible(m: Matrix) -> bool:
    return m.is_square() and rank(m) == m.rows


def in_span(vectors, v) -> bool:
    """Whether ``v`` lies in the span of ``vectors`` (all of equal length)."""
    vectors = list(vectors)
    if not vectors:
        return not any(v)
    return rank(vectors + [list(v)], len(v)) == rank(vectors, len(v))
