"""Exact vectors, matrices and subspaces over :class:`~gjts.scalar.Scalar`.

Vectors are plain tuples of scalars. Subspaces keep their basis in reduced
row-echelon form (pivot entries equal to one, pivots strictly increasing), so
two subspaces are equal exactly when their bases compare equal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, as_scalar

Vector = tuple  # tuple[Scalar, ...]

__all__ = [
    "Vector",
    "Matrix",
    "Subspace",
    "DirectSumReport",
    "DimensionMismatch",
    "vector",
    "zero_vector",
    "unit_vector",
    "add",
    "sub",
    "scale",
    "is_zero_vector",
    "rref",
    "rank",
    "kernel",
    "image",
    "intersect",
    "assert_direct_sum",
    "decompose",
    "solve",
    "inverse",
]


class DimensionMismatch(ValueError):
    pass


# -- vectors -----------------------------------------------------------------


def vector(entries: Iterable) -> Vector:
    return tuple(as_scalar(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def add(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"vector lengths {len(x)} and {len(y)} differ")
    return tuple(a + b for a, b in zip(x, y))


def sub(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"vector lengths {len(x)} and {len(y)} differ")
    return tuple(a - b for a, b in zip(x, y))


def scale(alpha, x: Vector) -> Vector:
    alpha = as_scalar(alpha)
    return tuple(alpha * a for a in x)


def is_zero_vector(x: Vector) -> bool:
    return not any(x)


# -- matrices ----------------------------------------------------------------


class Matrix:
    """Dense immutable matrix with :class:`Scalar` entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None) -> None:
        rows = [tuple(as_scalar(x) for x in row) for row in data]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise DimensionMismatch("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self._data = tuple(rows)

    @classmethod
    def _wrap(cls, rows: tuple, cols: int) -> Matrix:
        m = object.__new__(cls)
        m.rows, m.cols, m._data = len(rows), cols, rows
        return m

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls._wrap(tuple(unit_vector(n, i) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)), cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], nrows: int | None = None) -> Matrix:
        if not columns:
            if nrows is None:
                raise ValueError("need nrows for a matrix without columns")
            return cls._wrap(tuple(() for _ in range(nrows)), 0)
        n = len(columns[0])
        return cls._wrap(tuple(tuple(col[i] for col in columns) for i in range(n)), len(columns))

    @classmethod
    def diagonal(cls, entries: Sequence) -> Matrix:
        n = len(entries)
        rows = []
        for i, x in enumerate(entries):
            r = [ZERO] * n
            r[i] = as_scalar(x)
            rows.append(tuple(r))
        return cls._wrap(tuple(rows), n)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def to_rows(self) -> list[list[Scalar]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def transpose(self) -> Matrix:
        return Matrix._wrap(tuple(self.column(j) for j in range(self.cols)), self.rows)

    @property
    def T(self) -> Matrix:
        return self.transpose()

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix has {self.cols} columns, vector length {len(v)}")
        nz = [(j, x) for j, x in enumerate(v) if x]
        out = []
        for r in self._data:
            acc = ZERO
            for j, x in nz:
                m = r[j]
                if m:
                    acc = acc + m * x
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other):
        if isinstance(other, tuple):
            return self.apply(other)
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        rows = []
        for r in self._data:
            nz = [(k, x) for k, x in enumerate(r) if x]
            row = []
            for col in ocols:
                acc = ZERO
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                row.append(acc)
            rows.append(tuple(row))
        return Matrix._wrap(tuple(rows), other.cols)

    def __add__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot add {self.shape} and {other.shape}")
        return Matrix._wrap(tuple(add(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return Matrix._wrap(tuple(sub(a, b) for a, b in zip(self._data, other._data)), self.cols)

    def __neg__(self) -> Matrix:
        return Matrix._wrap(tuple(tuple(-x for x in r) for r in self._data), self.cols)

    def __mul__(self, alpha) -> Matrix:
        alpha = as_scalar(alpha)
        return Matrix._wrap(tuple(scale(alpha, r) for r in self._data), self.cols)

    __rmul__ = __mul__

    def shift(self, alpha) -> Matrix:
        """``self - alpha * I`` for a square matrix."""
        if self.rows != self.cols:
            raise DimensionMismatch("shift needs a square matrix")
        alpha = as_scalar(alpha)
        rows = []
        for i, r in enumerate(self._data):
            r = list(r)
            r[i] = r[i] - alpha
            rows.append(tuple(r))
        return Matrix._wrap(tuple(rows), self.cols)

    def vstack(self, other: Matrix) -> Matrix:
        if self.cols != other.cols:
            raise DimensionMismatch("vstack needs equal column counts")
        return Matrix._wrap(self._data + other._data, self.cols)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def nonzero_count(self) -> int:
        return sum(1 for r in self._data for x in r if x)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(
            x == (ONE if i == j else ZERO) for i, r in enumerate(self._data) for j, x in enumerate(r)
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.cols, self._data))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols})"

    def to_json(self) -> list:
        return [[x.to_json() for x in r] for r in self._data]

    @classmethod
    def from_json(cls, data, cols: int | None = None) -> Matrix:
        return cls([[Scalar.from_json(x) for x in r] for r in data], cols=cols)


# -- elimination -------------------------------------------------------------


def rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row-echelon form. Returns the nonzero rows and the pivot columns."""
    m = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c].inverse()
        if inv != ONE:
            m[r] = [x * inv if x else x for x in m[r]]
        piv = m[r]
        nz = [(j, x) for j, x in enumerate(piv) if x and j >= c]
        for i in range(len(m)):
            if i == r:
                continue
            f = m[i][c]
            if not f:
                continue
            row = m[i]
            for j, x in nz:
                row[j] = row[j] - f * x
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: Matrix) -> int:
    return len(rref(m.to_rows(), m.cols)[1])


@dataclass(frozen=True)
class Subspace:
    """A subspace of ``Φ^ambient_dim`` held by a canonical reduced basis."""

    ambient_dim: int
    basis: tuple = field(default=())

    def __post_init__(self) -> None:
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise DimensionMismatch("basis vector length differs from ambient dimension")

    @classmethod
    def span(cls, vectors: Iterable[Vector], ambient_dim: int) -> Subspace:
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in {ambient_dim}-space")
        rows, _ = rref(vectors, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in rows))

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n, ())

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(v) if x) for v in self.basis]

    def contains(self, v: Vector) -> bool:
        try:
            self.coordinates(v)
        except ValueError:
            return False
        return True

    def coordinates(self, v: Vector) -> tuple[Scalar, ...]:
        """Coordinates of ``v`` in the reduced basis; raises if ``v`` is outside."""
        if len(v) != self.ambient_dim:
            raise DimensionMismatch("vector length differs from ambient dimension")
        coords = tuple(v[p] for p in self.pivots)
        recon = zero_vector(self.ambient_dim)
        for c, b in zip(coords, self.basis):
            if c:
                recon = add(recon, scale(c, b))
        if recon != tuple(v):
            raise ValueError("vector is not in the subspace")
        return coords

    def basis_matrix(self) -> Matrix:
        """Ambient-by-dim matrix whose columns are the basis vectors."""
        return Matrix.from_columns(list(self.basis), nrows=self.ambient_dim)

    def annihilator(self) -> Matrix:
        """Rows spanning the linear equations cutting out this subspace."""
        if not self.basis:
            return Matrix.identity(self.ambient_dim)
        eqs = kernel(Matrix([list(v) for v in self.basis], cols=self.ambient_dim))
        if not eqs.basis:
            return Matrix.zeros(0, self.ambient_dim)
        return Matrix([list(v) for v in eqs.basis], cols=self.ambient_dim)

    def to_json(self) -> list:
        return [[x.to_json() for x in v] for v in self.basis]


def kernel(m: Matrix) -> Subspace:
    rows, pivots = rref(m.to_rows(), m.cols)
    pivset = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivset:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    # the free-column construction is already independent; normalize for equality
    return Subspace.span(basis, m.cols)


def image(m: Matrix) -> Subspace:
    return Subspace.span([m.column(j) for j in range(m.cols)], m.rows)


def intersect(s1: Subspace, s2: Subspace) -> Subspace:
    if s1.ambient_dim != s2.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions {s1.ambient_dim} and {s2.ambient_dim} differ")
    n = s1.ambient_dim
    a1, a2 = s1.annihilator(), s2.annihilator()
    if a1.rows == 0 and a2.rows == 0:
        return Subspace.full(n)
    eqs = Matrix._wrap(a1._data + a2._data, n)
    return kernel(eqs)


@dataclass(frozen=True)
class DirectSumReport:
    ok: bool
    rank: int
    total_dim: int
    ambient_dim: int

    @property
    def message(self) -> str:
        if self.ok:
            return f"direct sum of total dimension {self.total_dim}"
        return (
            f"not a direct sum of the whole space: rank {self.rank}, "
            f"sum of dimensions {self.total_dim}, ambient dimension {self.ambient_dim}"
        )


def assert_direct_sum(parts: Sequence[Subspace], ambient_dim: int) -> DirectSumReport:
    """Check that ``parts`` are independent and together span the ambient space.

    Failure is returned as a report, never raised.
    """
    for p in parts:
        if p.ambient_dim != ambient_dim:
            raise DimensionMismatch("part lives in a different ambient space")
    vectors = [v for p in parts for v in p.basis]
    total = len(vectors)
    r = len(rref(vectors, ambient_dim)[1]) if vectors else 0
    return DirectSumReport(ok=(r == total == ambient_dim), rank=r, total_dim=total, ambient_dim=ambient_dim)


def solve(m: Matrix, b: Vector) -> Vector:
    """One exact solution of ``m x = b``; raises ``ValueError`` if inconsistent."""
    if len(b) != m.rows:
        raise DimensionMismatch("right-hand side length differs from row count")
    aug = [list(r) + [bi] for r, bi in zip(m.to_rows(), b)]
    rows, pivots = rref(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        raise ValueError("inconsistent linear system")
    x = [ZERO] * m.cols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise DimensionMismatch("only square matrices are invertible")
    n = m.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.to_rows())]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(rows) < n:
        raise ZeroDivisionError("singular matrix")
    return Matrix([r[n:] for r in rows])


def decompose(parts: Sequence[Subspace], v: Vector) -> list[Vector]:
    """Split ``v`` into its components along a direct sum ``parts``."""
    columns = [b for p in parts for b in p.basis]
    if not columns:
        if any(v):
            raise ValueError("nonzero vector in a zero space")
        return [zero_vector(len(v)) for _ in parts]
    coeffs = solve(Matrix.from_columns(columns), tuple(v))
    out, k = [], 0
    for p in parts:
        comp = zero_vector(len(v))
        for b in p.basis:
            if coeffs[k]:
                comp = add(comp, scale(coeffs[k], b))
            k += 1
        out.append(comp)
    return out
