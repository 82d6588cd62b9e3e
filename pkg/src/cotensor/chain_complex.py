"""Non-negative, degreewise finite chain complexes over a field.

A complex carries a truncation degree ``maxdeg``: only degrees ``0..maxdeg``
are stored, and everything above is treated as zero.  For an unbounded object
this is the brutal truncation, so homology in degree ``maxdeg`` may be wrong
(the boundaries from degree ``maxdeg + 1`` are missing).  Homology results
carry an ``exact`` flag for that reason.

Differentials act on column vectors: ``d(n)`` has shape ``(dim X_{n-1}, dim X_n)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .field_linalg import (
    Field,
    Matrix,
    column_basis,
    complement_basis,
    kernel_basis,
    rank,
    section_of_surjection,
    solve_many,
)

__all__ = [
    "Report",
    "ChainComplex",
    "ChainMap",
    "Homology",
    "Splitting",
    "validate_complex",
    "validate_chain_map",
    "standard_complex",
    "sphere",
    "disk",
    "zero_complex",
    "unit_complex",
    "direct_sum",
    "homology",
    "homology_dims",
    "homology_coords",
    "homology_map",
    "split_complex",
    "homology_retract",
    "is_quasi_iso",
    "truncate_below",
    "tensor",
    "tensor_blocks",
    "tensor_maps",
    "tensor_labels",
    "associator",
    "twist",
    "identity_map",
    "zero_map",
    "inverse_permutation_map",
]


@dataclass(frozen=True)
class Report:
    """Outcome of a validation.  ``degree`` is the first offending degree."""

    ok: bool
    degree: int | None = None
    message: str = ""
    flags: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @staticmethod
    def fail(degree, message, **flags):
        return Report(False, degree, message, dict(flags))


@dataclass(frozen=True, eq=False)
class ChainComplex:
    field: Field
    dims: tuple[int, ...]
    diffs: tuple[Matrix, ...]

    @staticmethod
    def build(field: Field, dims: Sequence[int], diffs=None, maxdeg: int | None = None) -> "ChainComplex":
        """Build from dims and a ``{n: d_n}`` mapping (or list indexed by degree).

        Missing differentials are zero.  ``dims`` is padded with zeros up to ``maxdeg``.
        """
        dims = list(dims)
        if maxdeg is None:
            maxdeg = max(len(dims) - 1, 0)
        if len(dims) > maxdeg + 1:
            if any(dims[maxdeg + 1:]):
                raise ValueError("nonzero dims beyond maxdeg")
            dims = dims[:maxdeg + 1]
        dims = tuple(int(d) for d in dims) + (0,) * (maxdeg + 1 - len(dims))
        if isinstance(diffs, (list, tuple)):
            diffs = dict(enumerate(diffs))
        diffs = dict(diffs or {})
        mats = [field.zeros(0, dims[0])]
        for n in range(1, maxdeg + 1):
            m = diffs.get(n)
            if m is None:
                m = field.zeros(dims[n - 1], dims[n])
            elif not isinstance(m, Matrix):
                m = Matrix(field, m, shape=(dims[n - 1], dims[n]))
            if m.shape != (dims[n - 1], dims[n]):
                raise ValueError(f"d_{n} has shape {m.shape}, expected {(dims[n - 1], dims[n])}")
            mats.append(m)
        return ChainComplex(field, dims, tuple(mats))

    @property
    def maxdeg(self) -> int:
        return len(self.dims) - 1

    def dim(self, n: int) -> int:
        return self.dims[n] if 0 <= n <= self.maxdeg else 0

    def d(self, n: int) -> Matrix:
        """Differential out of degree ``n``; zero outside the window."""
        if 1 <= n <= self.maxdeg:
            return self.diffs[n]
        return self.field.zeros(self.dim(n - 1), self.dim(n))

    def total_dim(self) -> int:
        return sum(self.dims)

    def top_degree(self) -> int:
        """Largest degree with a nonzero piece, or -1 for the zero complex."""
        nz = [n for n, k in enumerate(self.dims) if k]
        return nz[-1] if nz else -1

    def is_zero(self) -> bool:
        return not any(self.dims)

    def with_maxdeg(self, maxdeg: int) -> "ChainComplex":
        """Restrict to a smaller window, or extend by zero to a larger one.

        Extending is only meaningful when the complex really vanishes above its window.
        """
        if maxdeg <= self.maxdeg:
            return ChainComplex(self.field, self.dims[:maxdeg + 1], self.diffs[:maxdeg + 1])
        return ChainComplex.build(self.field, self.dims, dict(enumerate(self.diffs)), maxdeg)

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        return (self.field == other.field and self.dims == other.dims
                and all(a == b for a, b in zip(self.diffs, other.diffs)))

    __hash__ = None

    def __repr__(self):
        return f"ChainComplex({self.field}, dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degree-zero graded map given by one matrix per degree ``0..maxdeg``."""

    source: ChainComplex
    target: ChainComplex
    mats: tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.mats) != len(self.source.dims):
            raise ValueError("one matrix per source degree required")
        for n, m in enumerate(self.mats):
            if m.shape != (self.target.dim(n), self.source.dim(n)):
                raise ValueError(f"f_{n} has shape {m.shape}, expected "
                                 f"{(self.target.dim(n), self.source.dim(n))}")

    @staticmethod
    def build(source, target, mats) -> "ChainMap":
        if isinstance(mats, dict):
            mats = [mats.get(n) for n in range(source.maxdeg + 1)]
        out = []
        for n, m in enumerate(mats):
            shape = (target.dim(n), source.dim(n))
            if m is None:
                m = source.field.zeros(*shape)
            elif not isinstance(m, Matrix):
                m = Matrix(source.field, m, shape=shape)
            out.append(m)
        return ChainMap(source, target, tuple(out))

    @property
    def field(self) -> Field:
        return self.source.field

    @property
    def maxdeg(self) -> int:
        return self.source.maxdeg

    def __getitem__(self, n: int) -> Matrix:
        if 0 <= n <= self.maxdeg:
            return self.mats[n]
        return self.field.zeros(self.target.dim(n), self.source.dim(n))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """Composite ``self ∘ other``."""
        return ChainMap(other.source, self.target,
                        tuple(a @ b for a, b in zip(self.mats, other.mats)))

    def __add__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(a + b for a, b in zip(self.mats, other.mats)))

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(a - b for a, b in zip(self.mats, other.mats)))

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(-a for a in self.mats))

    def __eq__(self, other):
        if not isinstance(other, ChainMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and all(a == b for a, b in zip(self.mats, other.mats)))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_injective(self) -> bool:
        return all(rank(m) == m.cols for m in self.mats)

    def is_surjective(self, start: int = 0) -> bool:
        return all(rank(m) == m.rows for m in self.mats[start:])

    def with_maxdeg(self, maxdeg: int) -> "ChainMap":
        s, t = self.source.with_maxdeg(maxdeg), self.target.with_maxdeg(maxdeg)
        return ChainMap.build(s, t, list(self.mats[:maxdeg + 1]))

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


def identity_map(x: ChainComplex) -> ChainMap:
    return ChainMap(x, x, tuple(x.field.identity(k) for k in x.dims))


def zero_map(x: ChainComplex, y: ChainComplex) -> ChainMap:
    return ChainMap.build(x, y, [None] * (x.maxdeg + 1))


# ---------------------------------------------------------------------------
# validation and constructors


def validate_complex(x: ChainComplex) -> Report:
    if len(x.diffs) != len(x.dims):
        return Report.fail(None, "differential count does not match dims")
    for n in range(1, x.maxdeg + 1):
        if x.diffs[n].shape != (x.dims[n - 1], x.dims[n]):
            return Report.fail(n, f"d_{n} has the wrong shape")
    for n in range(2, x.maxdeg + 1):
        if not (x.diffs[n - 1] @ x.diffs[n]).is_zero():
            return Report.fail(n, f"d_{n - 1} d_{n} != 0")
    return Report(True)


def validate_chain_map(f: ChainMap) -> Report:
    for n in range(1, f.maxdeg + 1):
        if f.target.d(n) @ f[n] != f[n - 1] @ f.source.d(n):
            return Report.fail(n, f"map does not commute with d_{n}")
    return Report(True)


def standard_complex(field: Field, kind: str, n: int, v_dim: int = 1,
                     maxdeg: int | None = None) -> ChainComplex:
    """``S^n(V)`` (V in degree n) or ``D^n(V)`` (V in degrees n-1, n, identity differential)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if maxdeg is None:
        maxdeg = n
    dims = [0] * (n + 1)
    if kind == "sphere":
        dims[n] = v_dim
        return ChainComplex.build(field, dims, {}, maxdeg)
    if kind == "disk":
        if n == 0:
            raise ValueError("the disk D^0 is not defined")
        dims[n - 1] = dims[n] = v_dim
        diffs = {n: field.identity(v_dim)} if n <= maxdeg else {}
        return ChainComplex.build(field, dims[:maxdeg + 1] if n > maxdeg else dims, diffs, maxdeg)
    raise ValueError(f"unknown standard complex kind {kind!r}")


def sphere(field: Field, n: int, v_dim: int = 1, maxdeg: int | None = None) -> ChainComplex:
    return standard_complex(field, "sphere", n, v_dim, maxdeg)


def disk(field: Field, n: int, v_dim: int = 1, maxdeg: int | None = None) -> ChainComplex:
    return standard_complex(field, "disk", n, v_dim, maxdeg)


def zero_complex(field: Field, maxdeg: int = 0) -> ChainComplex:
    return ChainComplex.build(field, [], {}, maxdeg)


def unit_complex(field: Field, maxdeg: int = 0) -> ChainComplex:
    """The ground field as a complex concentrated in degree 0."""
    return ChainComplex.build(field, [1], {}, maxdeg)


def direct_sum(*xs: ChainComplex) -> tuple[ChainComplex, list[ChainMap], list[ChainMap]]:
    """Direct sum with its inclusions and projections.  All summands share a window."""
    if not xs:
        raise ValueError("need at least one summand")
    field, N = xs[0].field, xs[0].maxdeg
    if any(x.maxdeg != N or x.field != field for x in xs):
        raise ValueError("summands must share field and maxdeg")
    dims = [sum(x.dim(n) for x in xs) for n in range(N + 1)]
    diffs = {n: Matrix.block_diag(field, [x.d(n) for x in xs]) for n in range(1, N + 1)}
    s = ChainComplex.build(field, dims, diffs, N)
    incs, projs = [], []
    for k, x in enumerate(xs):
        inc, proj = [], []
        for n in range(N + 1):
            before = sum(y.dim(n) for y in xs[:k])
            eye = np.zeros((dims[n], x.dim(n)), dtype=np.int64)
            eye[before:before + x.dim(n), :] = np.eye(x.dim(n), dtype=np.int64)
            inc.append(Matrix(field, eye))
            proj.append(Matrix(field, eye.T.copy()))
        incs.append(ChainMap(x, s, tuple(inc)))
        projs.append(ChainMap(s, x, tuple(proj)))
    return s, incs, projs


def truncate_below(x: ChainComplex, n: int) -> ChainComplex:
    """Subcomplex ``X_{<=n}``: degrees above ``n`` set to zero, window unchanged."""
    if n > x.maxdeg:
        raise ValueError("truncation degree exceeds maxdeg")
    dims = list(x.dims[:n + 1]) + [0] * (x.maxdeg - n)
    return ChainComplex.build(x.field, dims, {k: x.d(k) for k in range(1, n + 1)}, x.maxdeg)


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class Homology:
    degree: int
    dim: int
    reps: Matrix          # cycle representatives as columns
    exact: bool           # False when the degree touches the truncation edge

    def __int__(self):
        return self.dim


def _boundary_basis(x: ChainComplex, n: int) -> Matrix:
    return column_basis(x.d(n + 1)) if n + 1 <= x.maxdeg else x.field.zeros(x.dim(n), 0)


def homology(x: ChainComplex, n: int) -> Homology:
    """``H_n`` with cycle representatives spanning a complement of the boundaries."""
    field = x.field
    if n < 0 or n > x.maxdeg:
        return Homology(n, 0, field.zeros(x.dim(n), 0), n < 0)
    cycles = kernel_basis(x.d(n))
    bounds = _boundary_basis(x, n)
    reps = complement_basis(bounds, cycles)
    return Homology(n, reps.cols, reps, n < x.maxdeg)


def homology_dims(x: ChainComplex, upto: int | None = None) -> list[int]:
    upto = x.maxdeg if upto is None else upto
    return [homology(x, n).dim for n in range(upto + 1)]


def homology_coords(x: ChainComplex, n: int, cycles: Matrix, h: Homology | None = None) -> Matrix:
    """Coordinates of the classes of the given cycles in the basis ``homology(x, n).reps``."""
    h = h or homology(x, n)
    bounds = _boundary_basis(x, n)
    both = Matrix.hstack(x.field, [h.reps, bounds], rows=x.dim(n))
    sol = solve_many(both, cycles)
    if sol is None:
        raise ValueError(f"columns are not cycles in degree {n}")
    return sol.row_block(0, h.dim)


def homology_map(f: ChainMap, n: int) -> Matrix:
    hs = homology(f.source, n)
    return homology_coords(f.target, n, f[n] @ hs.reps)


def is_quasi_iso(f: ChainMap, through_degree: int | None = None) -> bool:
    """True iff ``H_i(f)`` is an isomorphism for ``0 <= i <= through_degree``."""
    through_degree = f.maxdeg if through_degree is None else through_degree
    for n in range(through_degree + 1):
        m = homology_map(f, n)
        if m.rows != m.cols or rank(m) != m.rows:
            return False
    return True


# ---------------------------------------------------------------------------
# splitting into spheres and disks


@dataclass(frozen=True)
class Splitting:
    """``X ≅ ⊕ S^n(V_n) ⊕ D^n(W_n)``.

    The model has degree-n basis ``[V_n | W_{n+1} (bottom of D^{n+1}) | W_n (top of D^n)]``.
    ``to_x`` is the isomorphism model -> X and ``from_x`` its inverse.
    """

    V: tuple[int, ...]
    W: tuple[int, ...]
    model: ChainComplex
    to_x: ChainMap
    from_x: ChainMap

    def homology_projection(self, n: int) -> Matrix:
        """``X_n -> H_n``: the V-block of ``from_x``."""
        return self.from_x[n].row_block(0, self.V[n])

    def homology_inclusion(self, n: int) -> Matrix:
        return self.to_x[n].col_block(0, self.V[n])


def split_complex(x: ChainComplex) -> Splitting:
    field, N = x.field, x.maxdeg
    W = [0] * (N + 2)
    tops = {}
    for n in range(1, N + 1):
        d = x.d(n)
        b = column_basis(d)
        W[n] = b.cols
        if b.cols:
            coords = solve_many(b, d)          # d = b @ coords, coords onto k^W
            tops[n] = section_of_surjection(coords)
        else:
            tops[n] = field.zeros(x.dim(n), 0)
    tops[0] = field.zeros(x.dim(0), 0)
    tops[N + 1] = None
    V = []
    phis = []
    for n in range(N + 1):
        bottom = x.d(n + 1) @ tops[n + 1] if n + 1 <= N else field.zeros(x.dim(n), 0)
        reps = complement_basis(bottom, kernel_basis(x.d(n)))
        V.append(reps.cols)
        phis.append(Matrix.hstack(field, [reps, bottom, tops[n]], rows=x.dim(n)))
    dims = [V[n] + W[n + 1] + W[n] for n in range(N + 1)]
    diffs = {}
    for n in range(1, N + 1):
        m = np.zeros((dims[n - 1], dims[n]), dtype=np.int64)
        # top of D^n in degree n maps identically onto its bottom in degree n-1
        r0, c0 = V[n - 1], V[n] + W[n + 1]
        m[r0:r0 + W[n], c0:c0 + W[n]] = np.eye(W[n], dtype=np.int64)
        diffs[n] = Matrix(field, m)
    model = ChainComplex.build(field, dims, diffs, N)
    to_x = ChainMap(model, x, tuple(phis))
    inv = []
    for n, p in enumerate(phis):
        s = solve_many(p, field.identity(x.dim(n)))
        if s is None:
            raise AssertionError("splitting failed to produce an isomorphism")
        inv.append(s)
    from_x = ChainMap(x, model, tuple(inv))
    return Splitting(tuple(V), tuple(W[:N + 1]), model, to_x, from_x)


def homology_retract(x: ChainComplex) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """``H_*(X)`` with zero differential, an inclusion ``H -> X`` and a projection ``X -> H``.

    Both are chain maps, ``proj @ inc = id`` and both induce the identity on homology.
    """
    s = split_complex(x)
    H = ChainComplex.build(x.field, s.V, {}, x.maxdeg)
    inc = ChainMap(H, x, tuple(s.homology_inclusion(n) for n in range(x.maxdeg + 1)))
    proj = ChainMap(x, H, tuple(s.homology_projection(n) for n in range(x.maxdeg + 1)))
    return H, inc, proj


# ---------------------------------------------------------------------------
# tensor products


def tensor_blocks(xdims: Sequence[int], ydims: Sequence[int], n: int) -> list[tuple[int, int, int]]:
    """``(i, offset, size)`` for the blocks ``X_i ⊗ Y_{n-i}`` of ``(X⊗Y)_n``."""
    out, off = [], 0
    for i in range(n + 1):
        a = xdims[i] if i < len(xdims) else 0
        j = n - i
        b = ydims[j] if j < len(ydims) else 0
        if a * b:
            out.append((i, off, a * b))
            off += a * b
    return out


def tensor(x: ChainComplex, y: ChainComplex, maxdeg: int | None = None) -> ChainComplex:
    """``X⊗Y`` with ``d(a⊗b) = da⊗b + (-1)^|a| a⊗db``.

    ``maxdeg`` defaults to ``x.maxdeg + y.maxdeg``; every degree up to
    ``min(x.maxdeg, y.maxdeg)`` is exact regardless of the truncation.
    """
    if x.field != y.field:
        raise ValueError(f"field mismatch: {x.field} vs {y.field}")
    field = x.field
    N = x.maxdeg + y.maxdeg if maxdeg is None else maxdeg
    xd, yd = x.dims, y.dims
    dims = [sum(s for _, _, s in tensor_blocks(xd, yd, n)) for n in range(N + 1)]
    diffs = {}
    for n in range(1, N + 1):
        src = tensor_blocks(xd, yd, n)
        tgt = {i: (off, s) for i, off, s in tensor_blocks(xd, yd, n - 1)}
        m = np.zeros((dims[n - 1], dims[n]), dtype=field.dtype)
        for i, off, s in src:
            j = n - i
            if i >= 1 and i - 1 in tgt:
                toff, ts = tgt[i - 1]
                m[toff:toff + ts, off:off + s] += x.d(i).kron(field.identity(y.dim(j))).a
            if j >= 1 and i in tgt:
                toff, ts = tgt[i]
                blk = field.identity(x.dim(i)).kron(y.d(j))
                m[toff:toff + ts, off:off + s] += (blk if i % 2 == 0 else -blk).a
        diffs[n] = Matrix._wrap(field, m)
    return ChainComplex.build(field, dims, diffs, N)


def tensor_maps(f: ChainMap, g: ChainMap, source: ChainComplex | None = None,
                target: ChainComplex | None = None) -> ChainMap:
    """``f⊗g`` for degree-zero maps (no Koszul sign appears)."""
    field = f.field
    if source is None:
        source = tensor(f.source, g.source, min(f.maxdeg, g.maxdeg))
    if target is None:
        target = tensor(f.target, g.target, source.maxdeg)
    fs, gs = f.source.dims, g.source.dims
    ft, gt = f.target.dims, g.target.dims
    mats = []
    for n in range(source.maxdeg + 1):
        tb = {i: (off, s) for i, off, s in tensor_blocks(ft, gt, n)}
        m = np.zeros((target.dim(n), source.dim(n)), dtype=field.dtype)
        for i, off, s in tensor_blocks(fs, gs, n):
            if i in tb:
                toff, ts = tb[i]
                m[toff:toff + ts, off:off + s] = f[i].kron(g[n - i]).a
        mats.append(Matrix._wrap(field, m))
    return ChainMap(source, target, tuple(mats))


def tensor_labels(xlabels, ylabels, maxdeg: int):
    """Basis labels of ``X⊗Y`` per degree, given per-degree label lists of X and Y.

    A label is a pair ``(degree, payload)``; the tensor label is ``(n, (lx, ly))``.
    """
    out = []
    for n in range(maxdeg + 1):
        cur = []
        for i in range(n + 1):
            j = n - i
            if i < len(xlabels) and j < len(ylabels):
                for lx in xlabels[i]:
                    for ly in ylabels[j]:
                        cur.append((n, (lx, ly)))
        out.append(cur)
    return out


def basic_labels(dims: Sequence[int]):
    return [[(n, (k,)) for k in range(d)] for n, d in enumerate(dims)]


@lru_cache(maxsize=512)
def _assoc_perm(ad, bd, cd, N):
    A, B, C = basic_labels(ad), basic_labels(bd), basic_labels(cd)
    left = tensor_labels(tensor_labels(A, B, N), C, N)
    right = tensor_labels(A, tensor_labels(B, C, N), N)
    perms = []
    for n in range(N + 1):
        pos = {}
        for k, (_, ((_, (a, b)), c)) in enumerate(left[n]):
            pos[(a, b, c)] = k
        perms.append(tuple(pos[(a, b, c)] for _, (a, (_, (b, c))) in right[n]))
    return tuple(perms)


def associator(a: ChainComplex, b: ChainComplex, c: ChainComplex, maxdeg: int | None = None,
               source: ChainComplex | None = None, target: ChainComplex | None = None) -> ChainMap:
    """The reindexing ``(A⊗B)⊗C -> A⊗(B⊗C)``."""
    N = min(a.maxdeg, b.maxdeg, c.maxdeg) if maxdeg is None else maxdeg
    field = a.field
    if source is None:
        source = tensor(tensor(a, b, N), c, N)
    if target is None:
        target = tensor(a, tensor(b, c, N), N)
    perms = _assoc_perm(a.dims, b.dims, c.dims, N)
    mats = []
    for n, perm in enumerate(perms):
        m = np.zeros((len(perm), len(perm)), dtype=np.int64)
        m[np.arange(len(perm)), list(perm)] = 1
        mats.append(Matrix(field, m))
    return ChainMap(source, target, tuple(mats))


def twist(x: ChainComplex, y: ChainComplex, maxdeg: int | None = None,
          source: ChainComplex | None = None, target: ChainComplex | None = None) -> ChainMap:
    """``τ(a⊗b) = (-1)^{|a||b|} b⊗a`` from ``X⊗Y`` to ``Y⊗X``."""
    N = min(x.maxdeg, y.maxdeg) if maxdeg is None else maxdeg
    field = x.field
    if source is None:
        source = tensor(x, y, N)
    if target is None:
        target = tensor(y, x, N)
    mats = []
    for n in range(N + 1):
        m = np.zeros((target.dim(n), source.dim(n)), dtype=field.dtype)
        tb = {i: off for i, off, _ in tensor_blocks(y.dims, x.dims, n)}
        for i, off, _ in tensor_blocks(x.dims, y.dims, n):
            j = n - i
            a, b = x.dim(i), y.dim(j)
            toff = tb[j]
            sign = -1 if (i * j) % 2 else 1
            for p in range(a):
                for q in range(b):
                    m[toff + q * a + p, off + p * b + q] = sign
        mats.append(Matrix._wrap(field, m))
    return ChainMap(source, target, tuple(mats))


def inverse_permutation_map(f: ChainMap) -> ChainMap:
    """Inverse of a degreewise permutation (or signed permutation) map."""
    return ChainMap(f.target, f.source, tuple(m.T for m in f.mats))
