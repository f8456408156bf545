"""Exact rational scalars, vectors and dense matrices.

Scalars are :class:`fractions.Fraction`. Vectors are plain tuples of
fractions. :class:`Matrix` is an immutable row-major grid. Elimination
routines clear denominators row by row and work over the integers
(content-reduced Gauss-Jordan for rref, Bareiss for determinants), so
intermediate entries stay small even for the 26x26 matrices that appear
for AG(3,3).

    >>> m = Matrix([[1, 2], [2, 4]])
    >>> r, piv = rref(m)
    >>> r.tolist(), piv
    ([[Fraction(1, 1), Fraction(2, 1)], [Fraction(0, 1), Fraction(0, 1)]], [0])
    >>> determinant(Matrix([[0, 1], [1, 0]]))
    Fraction(-1, 1)
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import DimMismatch, NonSquare, NonSymmetric, ParseError

Scalar = Fraction
Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"refusing inexact scalar {x!r} of type {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal. Decimals are an error."""
    s = text.strip()
    if not s:
        raise ParseError("empty rational")
    parts = s.split("/")
    if len(parts) > 2:
        raise ParseError(f"not a rational: {text!r}")
    try:
        num = int(parts[0])
        den = int(parts[1]) if len(parts) == 2 else 1
    except ValueError:
        raise ParseError(f"not an exact rational (use p/q): {text!r}") from None
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Canonical ``"p/q"`` with q > 0, always including the denominator."""
    x = to_scalar(x)
    return f"{x.numerator}/{x.denominator}"


# -- vectors ---------------------------------------------------------------

def vec(entries: Iterable) -> Vector:
    return tuple(to_scalar(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, k: int) -> Vector:
    if not 0 <= k < n:
        raise IndexError(f"unit index {k} out of range for dimension {n}")
    return tuple(ONE if i == k else ZERO for i in range(n))


def _check_same(u, v):
    if len(u) != len(v):
        raise DimMismatch(f"vector lengths {len(u)} and {len(v)} differ")


def vadd(u: Vector, v: Vector) -> Vector:
    _check_same(u, v)
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vector, v: Vector) -> Vector:
    _check_same(u, v)
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Vector) -> Vector:
    c = to_scalar(c)
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    _check_same(u, v)
    return sum((a * b for a, b in zip(u, v) if a and b), ZERO)


def lincomb(terms: Iterable[tuple], n: int) -> Vector:
    """Sum of ``c * v`` over ``(c, v)`` pairs, all of length ``n``."""
    acc = [ZERO] * n
    for c, v in terms:
        if not c:
            continue
        if len(v) != n:
            raise DimMismatch(f"expected length {n}, got {len(v)}")
        for k, a in enumerate(v):
            if a:
                acc[k] += c * a
    return tuple(acc)


def is_zero(v: Vector) -> bool:
    return not any(v)


# -- matrices --------------------------------------------------------------

class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        rows = tuple(tuple(to_scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = rows

    @classmethod
    def _raw(cls, rows: tuple, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = len(rows)
        m.cols = cols
        m._data = rows
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def ones(cls, rows: int, cols: int) -> "Matrix":
        return cls._raw(tuple((ONE,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int | None = None) -> "Matrix":
        if not columns:
            return cls._raw(tuple(() for _ in range(rows or 0)), 0)
        nrows = len(columns[0])
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(nrows)), len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"index {ij} out of range for shape {self.shape}")
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def row_list(self) -> tuple:
        return self._data

    def tolist(self) -> list:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        if self.rows == 0:
            return Matrix._raw(tuple(() for _ in range(self.cols)), 0)
        return Matrix._raw(tuple(zip(*self._data)), self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash((self.shape, self._data))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def _same_shape(self, other):
        if self.shape != other.shape:
            raise DimMismatch(f"shapes {self.shape} and {other.shape} differ")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                 for r, s in zip(self._data, other._data)), self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.cols)

    def __rmul__(self, c):
        return self.scale(c)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimMismatch(f"matrix has {self.cols} columns, vector has length {len(v)}")
        nz = [(j, a) for j, a in enumerate(v) if a]
        return tuple(sum((r[j] * a for j, a in nz if r[j]), ZERO) for r in self._data)

    def __matmul__(self, other):
        if isinstance(other, tuple):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = other.T._data
        out = []
        for r in self._data:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * c[k] for k, a in nz if c[k]), ZERO) for c in ocols))
        return Matrix._raw(tuple(out), other.cols)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise NonSquare(f"trace of non-square {self.shape}")
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        if not self.is_square():
            return False
        d = self._data
        return all(d[i][j] == d[j][i] for i in range(self.rows) for j in range(i))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(tuple(self._data[i][j] for j in cols) for i in rows), len(cols))


# -- elimination -----------------------------------------------------------

def _integer_row(row: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (ints, positive scale)."""
    den = 1
    for x in row:
        if x.denominator != 1:
            den = lcm(den, x.denominator)
    return [int(x * den) for x in row], den


def _primitive(row: list[int]) -> list[int]:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form and pivot columns.

    Rows are cleared to integers and eliminated fraction-free with content
    removal; the pivots are normalised to 1 only at the end.
    """
    rows = [_integer_row(r)[0] for r in m.row_list()]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((k for k in range(r, nrows) if rows[k][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r]
        a = piv[c]
        for k in range(nrows):
            if k != r and rows[k][c]:
                b = rows[k][c]
                rows[k] = _primitive([a * x - b * y for x, y in zip(rows[k], piv)])
        pivots.append(c)
        r += 1
    out = []
    for k, row in enumerate(rows):
        if k < len(pivots):
            lead = row[pivots[k]]
            out.append(tuple(Fraction(x, lead) for x in row))
        else:
            out.append((ZERO,) * ncols)
    return Matrix._raw(tuple(out), ncols), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> list[Vector]:
    """Basis of the null space, one vector per free column."""
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [ZERO] * m.cols
        v[free] = ONE
        for k, pc in enumerate(pivots):
            v[pc] = -r[k, free]
        basis.append(tuple(v))
    return basis


def determinant(m: Matrix) -> Fraction:
    """Bareiss fraction-free determinant."""
    if not m.is_square():
        raise NonSquare(f"determinant of non-square {m.shape}")
    n = m.rows
    if n == 0:
        return ONE
    scale = 1
    a = []
    for row in m.row_list():
        ints, den = _integer_row(row)
        a.append(ints)
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1], scale)


def leading_minor_signs(m: Matrix) -> list[int]:
    """Signs of the leading principal minors, via pivot-free Bareiss.

    Positive row scaling does not change minor signs, so the integer
    pivots carry the signs directly. Stops at the first zero minor.
    """
    n = m.rows
    a = [_integer_row(row)[0] for row in m.row_list()]
    signs = []
    prev = 1
    for k in range(n):
        akk = a[k][k]
        signs.append((akk > 0) - (akk < 0))
        if akk == 0:
            break
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return signs


def is_positive_definite(m: Matrix) -> bool:
    if not m.is_square():
        raise NonSquare(f"definiteness of non-square {m.shape}")
    if not m.is_symmetric():
        raise NonSymmetric("matrix is not symmetric")
    signs = leading_minor_signs(m)
    return len(signs) == m.rows and all(s > 0 for s in signs)


def eigenspace(m: Matrix, lam) -> list[Vector]:
    if not m.is_square():
        raise NonSquare(f"eigenspace of non-square {m.shape}")
    lam = to_scalar(lam)
    shifted = Matrix._raw(tuple(
        tuple(x - lam if i == j else x for j, x in enumerate(row))
        for i, row in enumerate(m.row_list())), m.cols)
    return kernel_basis(shifted)


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise NonSquare(f"inverse of non-square {m.shape}")
    n = m.rows
    aug = Matrix._raw(tuple(row + unit_vector(n, i) for i, row in enumerate(m.row_list())), 2 * n)
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix._raw(tuple(r.row(i)[n:] for i in range(n)), n)


def span_rank(vectors: Sequence[Vector]) -> int:
    if not vectors:
        return 0
    return rank(Matrix._raw(tuple(vectors), len(vectors[0])))


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    """Rank test: v lies in span(basis) iff appending it keeps the rank."""
    if is_zero(v):
        return True
    if not basis:
        return False
    return span_rank(list(basis) + [v]) == span_rank(basis)


def same_span(a: Sequence[Vector], b: Sequence[Vector]) -> bool:
    ra, rb = span_rank(a), span_rank(b)
    return ra == rb == span_rank(list(a) + list(b))


class Subspace:
    """Incrementally grown subspace kept in reduced echelon form.

    Used for span growth (ideal closure) where rebuilding an rref after
    every insertion would be wasteful.
    """

    def __init__(self, dim: int, vectors: Iterable[Vector] = ()):
        self.dim = dim
        self._rows: dict[int, list[Fraction]] = {}
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence[Fraction]) -> list[Fraction]:
        if len(v) != self.dim:
            raise DimMismatch(f"expected length {self.dim}, got {len(v)}")
        w = list(v)
        for p, row in self._rows.items():
            c = w[p]
            if c:
                for k, x in enumerate(row):
                    if x:
                        w[k] -= c * x
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Insert v; returns True when the dimension grew."""
        w = self.reduce(v)
        p = next((k for k, x in enumerate(w) if x), None)
        if p is None:
            return False
        lead = w[p]
        w = [x / lead for x in w]
        for row in self._rows.values():
            c = row[p]
            if c:
                for k, x in enumerate(w):
                    if x:
                        row[k] -= c * x
        self._rows[p] = w
        return True

    def basis(self) -> list[Vector]:
        return [tuple(self._rows[p]) for p in sorted(self._rows)]

    def pivots(self) -> list[int]:
        return sorted(self._rows)
