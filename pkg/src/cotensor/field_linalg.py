"""Exact linear algebra over GF(p) and the rationals.

Matrices act on column vectors.  Every routine pivots on the first nonzero
entry in column order, so bases, sections and complements are reproducible
from run to run.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

import numpy as np

__all__ = [
    "Field",
    "Matrix",
    "GF2",
    "GF3",
    "QQ",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "solve_many",
    "section_of_surjection",
    "left_inverse",
    "column_basis",
    "complement_basis",
    "quotient_map",
    "span_contains",
    "same_span",
]

_SMALL_PRIME = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


_to_fraction = np.frompyfunc(Fraction, 1, 1)


@dataclass(frozen=True)
class Field:
    """GF(p) for a prime p, or the rationals when ``characteristic == 0``."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and not _is_prime(p):
            raise ValueError(f"characteristic must be 0 or a prime, got {p}")

    @property
    def dtype(self):
        if 0 < self.characteristic < _SMALL_PRIME:
            return np.int64
        return object

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def normalize(self, arr: np.ndarray) -> np.ndarray:
        p = self.characteristic
        if p == 0:
            arr = np.asarray(arr, dtype=object)
            return _to_fraction(arr).astype(object) if arr.size else arr
        if self.dtype is object:
            arr = np.asarray(arr, dtype=object)
            return np.mod(arr, p) if arr.size else arr
        return np.mod(np.asarray(arr, dtype=np.int64), p)

    def scalar(self, x):
        """Canonical representative of ``x`` (int, Fraction or ``"a/b"`` string)."""
        p = self.characteristic
        if p == 0:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, p)) % p
        return int(x) % p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.characteristic == 0:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.characteristic)

    def zeros(self, rows: int, cols: int) -> "Matrix":
        return Matrix(self, np.zeros((rows, cols), dtype=self.dtype), _trusted=True)

    def identity(self, n: int) -> "Matrix":
        return Matrix(self, np.eye(n, dtype=np.int64))

    def matrix(self, rows, shape=None) -> "Matrix":
        return Matrix(self, rows, shape=shape)


GF2 = Field(2)
GF3 = Field(3)
QQ = Field(0)


class Matrix:
    """Immutable exact matrix over a :class:`Field`."""

    __slots__ = ("field", "a")

    def __init__(self, field: Field, data, shape=None, _trusted=False):
        if _trusted:
            a = data
        else:
            a = np.array(data, dtype=object)
            if shape is not None:
                a = a.reshape(shape)
            if a.size:
                a = np.vectorize(field.scalar, otypes=[object])(a)
            if field.dtype is not object:
                a = a.astype(np.int64)
            if a.ndim != 2:
                if a.size == 0 and shape is None:
                    raise ValueError("empty matrix needs an explicit shape")
                raise ValueError(f"expected a 2d array, got shape {a.shape}")
        a.flags.writeable = False
        self.field = field
        self.a = a

    # construction -----------------------------------------------------
    @classmethod
    def _wrap(cls, field: Field, arr) -> "Matrix":
        return cls(field, field.normalize(arr), _trusted=True)

    @staticmethod
    def hstack(field: Field, mats, rows: int | None = None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return field.zeros(rows or 0, 0)
        return Matrix._wrap(field, np.hstack([m.a for m in mats]))

    @staticmethod
    def vstack(field: Field, mats, cols: int | None = None) -> "Matrix":
        mats = list(mats)
        if not mats:
            return field.zeros(0, cols or 0)
        return Matrix._wrap(field, np.vstack([m.a for m in mats]))

    @staticmethod
    def block_diag(field: Field, mats) -> "Matrix":
        mats = list(mats)
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = np.zeros((r, c), dtype=field.dtype)
        i = j = 0
        for m in mats:
            out[i:i + m.rows, j:j + m.cols] = m.a
            i += m.rows
            j += m.cols
        return Matrix._wrap(field, out)

    @staticmethod
    def blocks(field: Field, grid, row_sizes, col_sizes) -> "Matrix":
        """Assemble from a dict ``{(bi, bj): Matrix}``; missing blocks are zero."""
        out = np.zeros((sum(row_sizes), sum(col_sizes)), dtype=field.dtype)
        roff = np.concatenate([[0], np.cumsum(row_sizes)]).astype(int)
        coff = np.concatenate([[0], np.cumsum(col_sizes)]).astype(int)
        for (bi, bj), m in grid.items():
            if m.shape != (row_sizes[bi], col_sizes[bj]):
                raise ValueError(f"block {(bi, bj)} has shape {m.shape}")
            out[roff[bi]:roff[bi + 1], coff[bj]:coff[bj + 1]] = m.a
        return Matrix._wrap(field, out)

    def kron(self, other: "Matrix") -> "Matrix":
        return Matrix._wrap(self.field, np.kron(self.a, other.a))

    # shape --------------------------------------------------------------
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy(), _trusted=True)

    def columns(self, idx) -> "Matrix":
        return Matrix(self.field, self.a[:, list(idx)].copy(), _trusted=True)

    def row_block(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.a[start:stop, :].copy(), _trusted=True)

    def col_block(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.a[:, start:stop].copy(), _trusted=True)

    def tolist(self):
        return [[e for e in row] for row in self.a.tolist()]

    # arithmetic -----------------------------------------------------------
    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix._wrap(self.field, self.a @ other.a)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._wrap(self.field, self.a + other.a)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._wrap(self.field, self.a - other.a)

    def __neg__(self) -> "Matrix":
        return Matrix._wrap(self.field, -self.a)

    def scale(self, c) -> "Matrix":
        return Matrix._wrap(self.field, self.a * self.field.scalar(c))

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.shape == other.shape
                and bool(np.all(self.a == other.a)))

    __hash__ = None

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def rank(self) -> int:
        return rank(self)

    def __repr__(self):
        return f"Matrix({self.field}, {self.tolist()}, shape={self.shape})"


# ---------------------------------------------------------------------------
# elimination


def _rref_array(field: Field, a: np.ndarray):
    a = np.array(a, dtype=field.dtype, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if len(nz) == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        inv = field.inv(a[r, c])
        a[r] = field.normalize(a[r] * inv)
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            a[hit] = field.normalize(a[hit] - np.outer(col[hit], a[r]))
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a, pivots = _rref_array(m.field, m.a)
    return Matrix(m.field, a, _trusted=True), pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(_rref_array(m.field, m.a)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns spanning the null space; one per free column, in column order."""
    field = m.field
    R, pivots = _rref_array(field, m.a)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    out = np.zeros((m.cols, len(free)), dtype=field.dtype)
    for j, f in enumerate(free):
        out[f, j] = 1
        for i, pc in enumerate(pivots):
            out[pc, j] = -R[i, f]
    return Matrix._wrap(field, out)


def solve_many(m: Matrix, b: Matrix) -> Matrix | None:
    """A matrix ``x`` with ``m @ x == b``, or ``None`` if some column is inconsistent.

    Free variables are set to zero.
    """
    m._check(b)
    if b.rows != m.rows:
        raise ValueError(f"right-hand side has {b.rows} rows, expected {m.rows}")
    field = m.field
    aug = np.hstack([m.a, b.a])
    R, pivots = _rref_array(field, aug)
    if any(p >= m.cols for p in pivots):
        return None
    x = np.zeros((m.cols, b.cols), dtype=field.dtype)
    for i, pc in enumerate(pivots):
        x[pc] = R[i, m.cols:]
    return Matrix._wrap(field, x)


def solve(m: Matrix, b) -> Matrix | None:
    """Solve ``m @ x == b`` for a single column; ``None`` when inconsistent."""
    if not isinstance(b, Matrix):
        b = Matrix(m.field, [[e] for e in b], shape=(m.rows, 1))
    return solve_many(m, b)


def section_of_surjection(m: Matrix) -> Matrix:
    """Right inverse ``s`` with ``m @ s == identity``; ``m`` must be onto."""
    if rank(m) != m.rows:
        raise ValueError(f"matrix of shape {m.shape} and rank {rank(m)} is not surjective")
    s = solve_many(m, m.field.identity(m.rows))
    assert s is not None
    return s


def left_inverse(m: Matrix) -> Matrix:
    """Left inverse of an injective matrix (transpose of a section of ``m.T``)."""
    if rank(m) != m.cols:
        raise ValueError(f"matrix of shape {m.shape} is not injective")
    return section_of_surjection(m.T).T


def column_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``: a basis of its column space."""
    if m.cols == 0 or m.rows == 0:
        return m.field.zeros(m.rows, 0)
    _, pivots = _rref_array(m.field, m.a)
    return m.columns(pivots)


def complement_basis(sub: Matrix, extra: Matrix | None = None) -> Matrix:
    """Columns completing the span of ``sub``.

    Candidates are taken from ``extra`` (standard basis by default) in order.
    The result spans a complement of ``span(sub)`` inside ``span(sub) + span(extra)``.
    """
    field = sub.field
    n = sub.rows
    if extra is None:
        extra = field.identity(n)
    both = Matrix.hstack(field, [sub, extra], rows=n)
    if both.cols == 0 or n == 0:
        return field.zeros(n, 0)
    _, pivots = _rref_array(field, both.a)
    k = sub.cols
    return extra.columns([p - k for p in pivots if p >= k])


def quotient_map(sub: Matrix) -> tuple[Matrix, Matrix]:
    """Projection ``q`` onto ``k^n / span(sub)`` and the complement ``e`` it is read in.

    ``q @ sub == 0`` and ``q @ e == identity``.
    """
    field = sub.field
    basis = column_basis(sub)
    e = complement_basis(basis)
    full = Matrix.hstack(field, [basis, e], rows=sub.rows)
    inv = solve_many(full, field.identity(sub.rows))
    assert inv is not None
    return inv.row_block(basis.cols, sub.rows), e


def span_contains(big: Matrix, small: Matrix) -> bool:
    if small.cols == 0:
        return True
    return rank(Matrix.hstack(big.field, [big, small], rows=big.rows)) == rank(big)


def same_span(a: Matrix, b: Matrix) -> bool:
    return rank(a) == rank(b) and span_contains(a, b)


def matrix_sum(field: Field, mats, rows: int, cols: int) -> Matrix:
    return reduce(lambda x, y: x + y, mats, field.zeros(rows, cols))
