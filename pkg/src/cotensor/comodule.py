"""Right dg-comodules over a dg-coalgebra.

Coactions are stored as chain maps ``ρ: X -> X⊗C``.  A left coaction
``λ: X -> C⊗X`` may be stored alongside; when none is given and ``C`` is
cocommutative it is taken to be ``τρ``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .chain_complex import (
    ChainComplex,
    ChainMap,
    Report,
    associator,
    direct_sum as complex_direct_sum,
    identity_map,
    inverse_permutation_map,
    sphere,
    tensor,
    tensor_maps,
    twist,
    validate_chain_map,
    validate_complex,
    zero_complex,
)
from .coalgebra import DGCoalgebra
from .field_linalg import (
    Matrix,
    column_basis,
    kernel_basis,
    quotient_map,
    rank,
    section_of_surjection,
    solve_many,
)

__all__ = [
    "DGComodule",
    "ComoduleMap",
    "HomSpace",
    "FibrancyResult",
    "validate_comodule",
    "validate_left_coaction",
    "validate_comodule_map",
    "cofree",
    "cofree_map",
    "cofree_adjoint",
    "trivial_comodule",
    "coalgebra_comodule",
    "zero_comodule",
    "comodule_direct_sum",
    "subcomodule",
    "quotient_comodule",
    "comodule_pullback",
    "kernel_cokernel",
    "hom_comodule",
    "is_fibrant",
    "is_fibration",
    "truncate_comodule",
    "identity_comodule_map",
    "zero_comodule_map",
    "restrict_comodule",
    "restrict_map",
    "Pullback",
]


@dataclass(frozen=True, eq=False)
class DGComodule:
    coalgebra: DGCoalgebra
    carrier: ChainComplex
    coaction: ChainMap
    left_given: ChainMap | None = None
    name: str = ""

    @staticmethod
    def build(coalgebra: DGCoalgebra, carrier: ChainComplex, coaction, left=None,
              name: str = "") -> "DGComodule":
        N = carrier.maxdeg
        C = coalgebra.carrier
        if not isinstance(coaction, ChainMap):
            coaction = ChainMap.build(carrier, tensor(carrier, C, N), coaction)
        if left is not None and not isinstance(left, ChainMap):
            left = ChainMap.build(carrier, tensor(C, carrier, N), left)
        return DGComodule(coalgebra, carrier, coaction, left, name)

    @property
    def field(self):
        return self.carrier.field

    @property
    def maxdeg(self) -> int:
        return self.carrier.maxdeg

    @property
    def dims(self):
        return self.carrier.dims

    @cached_property
    def xc(self) -> ChainComplex:
        return self.coaction.target

    @cached_property
    def left(self) -> ChainMap:
        if self.left_given is not None:
            return self.left_given
        if not self.coalgebra.cocommutative:
            raise ValueError("no left coaction stored and the coalgebra is not cocommutative")
        C = self.coalgebra.carrier
        return twist(self.carrier, C, self.maxdeg, source=self.xc) @ self.coaction

    @property
    def has_left(self) -> bool:
        return self.left_given is not None or self.coalgebra.cocommutative

    @cached_property
    def report(self) -> Report:
        return validate_comodule(self)

    def __repr__(self):
        return f"DGComodule({self.name or '?'} over {self.coalgebra.name or '?'}, dims={list(self.dims)})"


@dataclass(frozen=True, eq=False)
class ComoduleMap:
    source: DGComodule
    target: DGComodule
    map: ChainMap

    def __getitem__(self, n):
        return self.map[n]

    def __matmul__(self, other: "ComoduleMap") -> "ComoduleMap":
        return ComoduleMap(other.source, self.target, self.map @ other.map)

    def __sub__(self, other: "ComoduleMap") -> "ComoduleMap":
        return ComoduleMap(self.source, self.target, self.map - other.map)

    @property
    def maxdeg(self):
        return self.map.maxdeg

    def is_injective(self) -> bool:
        return self.map.is_injective()

    def is_surjective(self, start: int = 0) -> bool:
        return self.map.is_surjective(start)


def identity_comodule_map(x: DGComodule) -> ComoduleMap:
    return ComoduleMap(x, x, identity_map(x.carrier))


def zero_comodule_map(x: DGComodule, y: DGComodule) -> ComoduleMap:
    return ComoduleMap(x, y, ChainMap.build(x.carrier, y.carrier, [None] * (x.maxdeg + 1)))


# ---------------------------------------------------------------------------
# validation


def validate_comodule(x: DGComodule) -> Report:
    X, C, N = x.carrier, x.coalgebra.carrier, x.maxdeg
    if C.maxdeg != N:
        return Report.fail(None, f"coalgebra window {C.maxdeg} differs from comodule window {N}")
    r = validate_complex(X)
    if not r:
        return Report.fail(r.degree, "carrier: " + r.message)
    rho = x.coaction
    if rho.target.dims != tensor(X, C, N).dims:
        return Report.fail(None, "coaction has the wrong shape")
    r = validate_chain_map(rho)
    if not r:
        return Report.fail(r.degree, "coaction is not a chain map")
    xc = rho.target
    lhs = tensor_maps(rho, identity_map(C), source=xc) @ rho
    rhs = tensor_maps(identity_map(X), x.coalgebra.comult, source=xc) @ rho
    lhs = associator(X, C, C, N, source=lhs.target, target=rhs.target) @ lhs
    for n in range(N + 1):
        if lhs[n] != rhs[n]:
            return Report.fail(n, "coaction is not coassociative")
    cu = tensor_maps(identity_map(X), x.coalgebra.counit, source=xc) @ rho
    for n in range(N + 1):
        if cu[n] != X.field.identity(X.dim(n)):
            return Report.fail(n, "coaction is not counital")
    if x.left_given is not None:
        r = validate_left_coaction(x)
        if not r:
            return r
    return Report(True)


def validate_left_coaction(x: DGComodule) -> Report:
    X, C, N = x.carrier, x.coalgebra.carrier, x.maxdeg
    lam = x.left
    r = validate_chain_map(lam)
    if not r:
        return Report.fail(r.degree, "left coaction is not a chain map")
    cx = lam.target
    lhs = tensor_maps(x.coalgebra.comult, identity_map(X), source=cx) @ lam
    rhs = tensor_maps(identity_map(C), lam, source=cx) @ lam
    lhs = associator(C, C, X, N, source=lhs.target, target=rhs.target) @ lhs
    for n in range(N + 1):
        if lhs[n] != rhs[n]:
            return Report.fail(n, "left coaction is not coassociative")
    cu = tensor_maps(x.coalgebra.counit, identity_map(X), source=cx) @ lam
    for n in range(N + 1):
        if cu[n] != X.field.identity(X.dim(n)):
            return Report.fail(n, "left coaction is not counital")
    return Report(True)


def validate_comodule_map(f: ComoduleMap) -> Report:
    r = validate_chain_map(f.map)
    if not r:
        return r
    C = f.source.coalgebra.carrier
    lhs = f.target.coaction @ f.map
    rhs = tensor_maps(f.map, identity_map(C), source=f.source.xc, target=f.target.xc) @ f.source.coaction
    for n in range(f.maxdeg + 1):
        if lhs[n] != rhs[n]:
            return Report.fail(n, "map does not commute with the coactions")
    return Report(True)


# ---------------------------------------------------------------------------
# constructions


def cofree(m: ChainComplex, c: DGCoalgebra, name: str = "") -> DGComodule:
    """``M⊗C`` with coaction ``id⊗Δ`` (reassociated)."""
    if m.field != c.field:
        raise ValueError(f"field mismatch: {m.field} vs {c.field}")
    N = c.maxdeg
    if m.maxdeg != N:
        m = m.with_maxdeg(N)
    C = c.carrier
    mc = tensor(m, C, N)
    step = tensor_maps(identity_map(m), c.comult, source=mc)
    back = inverse_permutation_map(associator(m, C, C, N, target=step.target))
    rho = ChainMap(mc, back.target, (back @ step).mats)
    return DGComodule(c, mc, rho, None, name)


def cofree_map(g: ChainMap, c: DGCoalgebra, source: DGComodule | None = None,
               target: DGComodule | None = None) -> ComoduleMap:
    """``g⊗id_C : M⊗C -> M'⊗C``."""
    source = source or cofree(g.source, c)
    target = target or cofree(g.target, c)
    f = tensor_maps(g, identity_map(c.carrier), source=source.carrier, target=target.carrier)
    return ComoduleMap(source, target, f)


def cofree_adjoint(x: DGComodule, phi: ChainMap, target: DGComodule | None = None) -> ComoduleMap:
    """The comodule map ``X -> M⊗C`` adjoint to a chain map ``phi: X -> M``: ``(phi⊗id)ρ``."""
    c = x.coalgebra
    target = target or cofree(phi.target, c)
    f = tensor_maps(phi, identity_map(c.carrier), source=x.xc, target=target.carrier) @ x.coaction
    return ComoduleMap(x, target, ChainMap(x.carrier, target.carrier, f.mats))


def _unit_tensor(m: ChainComplex, eta: ChainMap, left: bool) -> ChainMap:
    """``M -> M⊗C`` (or ``C⊗M``) through ``M ≅ M⊗k``."""
    k = eta.source
    if left:
        f = tensor_maps(eta, identity_map(m), source=tensor(k, m, m.maxdeg))
    else:
        f = tensor_maps(identity_map(m), eta, source=tensor(m, k, m.maxdeg))
    return ChainMap(m, f.target, f.mats)


def trivial_comodule(m: ChainComplex, c: DGCoalgebra, name: str = "") -> DGComodule:
    """``M`` with coaction ``id⊗η``; the left coaction ``η⊗id`` is stored too."""
    eta = c.coaug
    if eta is None:
        raise ValueError("trivial comodules need a coaugmented coalgebra")
    if m.maxdeg != c.maxdeg:
        m = m.with_maxdeg(c.maxdeg)
    return DGComodule(c, m, _unit_tensor(m, eta, False), _unit_tensor(m, eta, True), name)


def coalgebra_comodule(c: DGCoalgebra, name: str = "") -> DGComodule:
    """``C`` over itself, with ``Δ`` as both right and left coaction."""
    return DGComodule(c, c.carrier, c.comult, c.comult, name or (c.name and f"C({c.name})"))


def zero_comodule(c: DGCoalgebra) -> DGComodule:
    return trivial_comodule(zero_complex(c.field, c.maxdeg), c, "0")


def comodule_direct_sum(*xs: DGComodule) -> tuple[DGComodule, list[ComoduleMap], list[ComoduleMap]]:
    c = xs[0].coalgebra
    C, N = c.carrier, c.maxdeg
    s, incs, projs = complex_direct_sum(*(x.carrier for x in xs))
    sc = tensor(s, C, N)
    idc = identity_map(C)
    rho = None
    for x, i, p in zip(xs, incs, projs):
        term = tensor_maps(i, idc, source=x.xc, target=sc) @ x.coaction @ p
        rho = term if rho is None else rho + term
    left = None
    if all(x.left_given is not None for x in xs):
        cs = tensor(C, s, N)
        for x, i, p in zip(xs, incs, projs):
            term = tensor_maps(idc, i, source=x.left.target, target=cs) @ x.left @ p
            left = term if left is None else left + term
    out = DGComodule(c, s, rho, left, "+".join(x.name for x in xs if x.name))
    return (out, [ComoduleMap(x, out, i) for x, i in zip(xs, incs)],
            [ComoduleMap(out, x, p) for x, p in zip(xs, projs)])


def subcomodule(s: DGComodule, basis, name: str = "") -> tuple[DGComodule, ComoduleMap]:
    """The subcomodule spanned degreewise by the (independent) columns of ``basis[n]``.

    Raises ``ValueError`` when the span is not closed under ``d`` or the coaction.
    """
    S, c, N = s.carrier, s.coalgebra, s.maxdeg
    f = S.field
    basis = list(basis)
    diffs = {}
    for n in range(1, N + 1):
        sol = solve_many(basis[n - 1], S.d(n) @ basis[n])
        if sol is None:
            raise ValueError(f"span is not closed under the differential in degree {n}")
        diffs[n] = sol
    P = ChainComplex.build(f, [b.cols for b in basis], diffs, N)
    inc = ChainMap(P, S, tuple(basis))
    C = c.carrier
    pc = tensor(P, C, N)
    kc = tensor_maps(inc, identity_map(C), source=pc, target=s.xc)
    img = s.coaction @ inc
    rho = []
    for n in range(N + 1):
        sol = solve_many(kc[n], img[n])
        if sol is None:
            raise ValueError(f"span is not closed under the coaction in degree {n}")
        rho.append(sol)
    left = None
    if s.left_given is not None:
        cp = tensor(C, P, N)
        ck = tensor_maps(identity_map(C), inc, source=cp, target=s.left.target)
        limg = s.left @ inc
        mats = []
        for n in range(N + 1):
            sol = solve_many(ck[n], limg[n])
            if sol is None:
                raise ValueError(f"span is not closed under the left coaction in degree {n}")
            mats.append(sol)
        left = ChainMap(P, cp, tuple(mats))
    p = DGComodule(c, P, ChainMap(P, pc, tuple(rho)), left, name)
    return p, ComoduleMap(p, s, inc)


def quotient_comodule(s: DGComodule, sub, name: str = "") -> tuple[DGComodule, ComoduleMap]:
    """``S / span(sub[n])`` for a subcomodule given by spanning columns."""
    S, c, N = s.carrier, s.coalgebra, s.maxdeg
    f = S.field
    qs, es = [], []
    for n in range(N + 1):
        q, e = quotient_map(sub[n])
        qs.append(q)
        es.append(e)
    diffs = {n: qs[n - 1] @ S.d(n) @ es[n] for n in range(1, N + 1)}
    Q = ChainComplex.build(f, [q.rows for q in qs], diffs, N)
    qmap = ChainMap(S, Q, tuple(qs))
    C = c.carrier
    idc = identity_map(C)
    qc = tensor(Q, C, N)
    push = tensor_maps(qmap, idc, source=s.xc, target=qc)
    rho = ChainMap(Q, qc, tuple(push[n] @ s.coaction[n] @ es[n] for n in range(N + 1)))
    left = None
    if s.left_given is not None:
        cq = tensor(C, Q, N)
        lpush = tensor_maps(idc, qmap, source=s.left.target, target=cq)
        left = ChainMap(Q, cq, tuple(lpush[n] @ s.left[n] @ es[n] for n in range(N + 1)))
    out = DGComodule(c, Q, rho, left, name)
    qm = ComoduleMap(s, out, qmap)
    r = validate_comodule_map(qm)
    if not r:
        raise ValueError(f"quotient is not a comodule map in degree {r.degree}: not a subcomodule")
    return out, qm


@dataclass(frozen=True, eq=False)
class Pullback:
    obj: DGComodule
    to_x: ComoduleMap
    to_y: ComoduleMap
    inclusion: ChainMap  # P -> X ⊕ Y

    def mediate(self, a: ComoduleMap, b: ComoduleMap) -> ComoduleMap | None:
        """The unique map ``W -> P`` with the given legs, or ``None`` if the cone does not commute."""
        mats = []
        for n in range(self.obj.maxdeg + 1):
            col = Matrix.vstack(a.map.field, [a[n], b[n]], cols=a.source.carrier.dim(n))
            sol = solve_many(self.inclusion[n], col)
            if sol is None:
                return None
            mats.append(sol)
        return ComoduleMap(a.source, self.obj, ChainMap(a.source.carrier, self.obj.carrier, tuple(mats)))


def comodule_pullback(f: ComoduleMap, g: ComoduleMap, name: str = "") -> Pullback:
    """Degreewise pullback ``X ×_Z Y``.

    When ``g`` is onto in a degree the basis is ``(e, s f e)`` for the standard
    basis ``e`` of ``X_n`` followed by ``(0, ker g_n)``, where ``s`` is the chosen
    section of ``g_n``; this keeps the basis of ``X`` visible in ``P``.
    Otherwise a kernel basis of ``(f, -g)`` is used.
    """
    X, Y = f.source, g.source
    field, N = X.field, X.maxdeg
    s, incs, projs = comodule_direct_sum(X, Y)
    basis = []
    for n in range(N + 1):
        fn, gn = f[n], g[n]
        if gn.rows == 0 or rank(gn) == gn.rows:
            top = field.identity(X.carrier.dim(n))
            if gn.rows:
                lift = section_of_surjection(gn) @ fn
            else:
                lift = field.zeros(Y.carrier.dim(n), X.carrier.dim(n))
            k = kernel_basis(gn)
            left = Matrix.vstack(field, [top, lift], cols=X.carrier.dim(n))
            right = Matrix.vstack(field, [field.zeros(X.carrier.dim(n), k.cols), k], cols=k.cols)
            basis.append(Matrix.hstack(field, [left, right], rows=s.carrier.dim(n)))
        else:
            basis.append(kernel_basis(Matrix.hstack(field, [fn, -gn], rows=fn.rows)))
    p, inc = subcomodule(s, basis, name)
    return Pullback(p, projs[0] @ inc, projs[1] @ inc, inc.map)


def kernel_cokernel(f: ComoduleMap) -> tuple[tuple[DGComodule, ComoduleMap], tuple[DGComodule, ComoduleMap]]:
    N = f.maxdeg
    ker = subcomodule(f.source, [kernel_basis(f[n]) for n in range(N + 1)], "ker")
    cok = quotient_comodule(f.target, [column_basis(f[n]) for n in range(N + 1)], "coker")
    return ker, cok


def truncate_comodule(x: DGComodule, n: int) -> tuple[DGComodule, ComoduleMap]:
    """``X_{<=n}`` with the restricted coaction and its inclusion into ``X``."""
    X = x.carrier
    field = X.field
    basis = [field.identity(X.dim(i)) if i <= n else field.zeros(X.dim(i), 0)
             for i in range(X.maxdeg + 1)]
    try:
        return subcomodule(x, basis, f"{x.name}<={n}" if x.name else "")
    except ValueError as exc:
        raise ValueError(f"coaction does not restrict to the truncation: {exc}") from None


# ---------------------------------------------------------------------------
# Hom


@dataclass(frozen=True, eq=False)
class HomSpace:
    """``Hom_C(X, Y)_m`` as a subspace of ``∏_i Hom(X_i, Y_{i+m})``.

    Coordinates: blocks ordered by ``i``; each block is a ``dim Y_{i+m} × dim X_i``
    matrix flattened row-major.  ``exact`` is False when part of the answer
    would need degrees of ``Y⊗C`` beyond the window.
    """

    degree: int
    blocks: tuple[tuple[int, int, int, int], ...]   # (i, offset, rows, cols)
    ambient: int
    basis: Matrix
    exact: bool

    @property
    def dim(self) -> int:
        return self.basis.cols

    def unpack(self, vec) -> dict[int, Matrix]:
        """Per-degree matrices of an ambient coordinate column."""
        field = self.basis.field
        v = vec.a[:, 0] if isinstance(vec, Matrix) else np.asarray(vec)
        out = {}
        for i, off, r, c in self.blocks:
            out[i] = Matrix._wrap(field, np.array(v[off:off + r * c]).reshape(r, c))
        return out


def _hom_blocks(x: ChainComplex, y: ChainComplex, m: int):
    blocks, off = [], 0
    for i in range(x.maxdeg + 1):
        if 0 <= i + m <= y.maxdeg and x.dim(i) and y.dim(i + m):
            r, c = y.dim(i + m), x.dim(i)
            blocks.append((i, off, r, c))
            off += r * c
    return tuple(blocks), off


def hom_comodule(x: DGComodule, y: DGComodule, m: int) -> HomSpace:
    """Degree-``m`` comodule maps: the equalizer of ``f ↦ ρ_Y f`` and ``f ↦ (f⊗id)ρ_X``."""
    X, Y, C = x.carrier, y.carrier, x.coalgebra.carrier
    N = x.maxdeg
    field = X.field
    blocks, ambient = _hom_blocks(X, Y, m)
    top = X.top_degree()
    exact = top < 0 or top + m <= N
    if ambient == 0:
        return HomSpace(m, blocks, 0, field.zeros(0, 0), exact)
    xc_blocks = {}
    for n in range(N + 1):
        xc_blocks[n] = _tensor_offsets(X.dims, C.dims, n)
    yc_blocks = {n: _tensor_offsets(Y.dims, C.dims, n) for n in range(N + 1)}
    # equation rows: for each source degree n with n+m in window, (Y⊗C)_{n+m} × X_n entries
    eq_rows = []
    for n in range(N + 1):
        if 0 <= n + m <= N and X.dim(n):
            eq_rows.append((n, y.xc.dim(n + m) * X.dim(n)))
    total_rows = sum(r for _, r in eq_rows)
    row_off = {}
    acc = 0
    for n, r in eq_rows:
        row_off[n] = acc
        acc += r
    E = np.zeros((total_rows, ambient), dtype=field.dtype)
    for i, off, r, c in blocks:
        for a in range(r):
            for b in range(c):
                col = off + a * c + b
                e = np.zeros((r, c), dtype=field.dtype)
                e[a, b] = 1
                emat = Matrix._wrap(field, e)
                # ρ_Y f contributes in source degree i
                if i in row_off:
                    v = y.coaction[i + m] @ emat
                    E[row_off[i]:row_off[i] + v.rows * v.cols, col] += v.a.reshape(-1)
                # (f⊗id)ρ_X: f on X_i ⊗ C_j, from source degree n = i + j
                for n in range(i, N + 1):
                    j = n - i
                    if n not in row_off or C.dim(j) == 0:
                        continue
                    src = xc_blocks[n].get(i)
                    dst = yc_blocks[n + m].get(i + m)
                    if src is None or dst is None:
                        continue
                    fo = emat.kron(field.identity(C.dim(j)))
                    rho = x.coaction[n].row_block(src[0], src[0] + src[1])
                    contrib = np.zeros((y.xc.dim(n + m), X.dim(n)), dtype=field.dtype)
                    contrib[dst[0]:dst[0] + dst[1], :] = (fo @ rho).a
                    E[row_off[n]:row_off[n] + contrib.size, col] -= contrib.reshape(-1)
    Em = Matrix._wrap(field, E)
    return HomSpace(m, blocks, ambient, kernel_basis(Em), exact)


def _tensor_offsets(xdims, cdims, n):
    from .chain_complex import tensor_blocks
    return {i: (off, s) for i, off, s in tensor_blocks(xdims, cdims, n)}


def hom_differential(x: DGComodule, y: DGComodule, m: int,
                     src: HomSpace | None = None, tgt: HomSpace | None = None) -> Matrix:
    """``Df = d_Y f - (-1)^m f d_X`` from ``Hom_C(X,Y)_m`` to ``Hom_C(X,Y)_{m-1}`` in basis coordinates."""
    src = src or hom_comodule(x, y, m)
    tgt = tgt or hom_comodule(x, y, m - 1)
    field = x.field
    X, Y = x.carrier, y.carrier
    cols = []
    sign = -1 if m % 2 else 1
    for k in range(src.dim):
        fs = src.unpack(src.basis.col_block(k, k + 1))
        vec = np.zeros(tgt.ambient, dtype=field.dtype)
        for i, off, r, c in tgt.blocks:
            blk = field.zeros(r, c)
            if i in fs:
                blk = blk + Y.d(i + m) @ fs[i]
            if i - 1 in fs:
                term = fs[i - 1] @ X.d(i)
                blk = blk - term if sign == 1 else blk + term
            vec[off:off + r * c] = blk.a.reshape(-1)
        cols.append(vec)
    amb = Matrix._wrap(field, np.array(cols, dtype=field.dtype).T.reshape(tgt.ambient, src.dim))
    if tgt.dim == 0:
        return field.zeros(0, src.dim)
    sol = solve_many(tgt.basis, amb)
    if sol is None:
        if not (src.exact and tgt.exact):
            raise ValueError(f"Hom_C(X, Y)_{m} is not exact in a window of size {x.maxdeg}")
        raise AssertionError("Hom differential left the comodule maps")
    return sol


# ---------------------------------------------------------------------------
# fibrancy


@dataclass(frozen=True)
class FibrancyResult:
    """``value`` is True/False, or None when the test is inconclusive."""

    value: bool | None
    through_degree: int
    certificate: int | None = None   # first chain degree with nonzero CoTor^1
    reason: str = ""

    def __bool__(self):
        return bool(self.value)


def is_fibrant(x: DGComodule, through_degree: int | None = None) -> FibrancyResult:
    """Fibrant (= coflat) iff ``CoTor^1_C(X, S^0)`` vanishes; checked in chain degrees ``<= through_degree``.

    For cocommutative ``C`` this is ``CoTor^1_C(S^0, X)``; the right-handed form
    also works when ``X`` carries no left coaction.
    """
    from .cotensor import cotor_cobar

    c = x.coalgebra
    if not c.simply_connected:
        raise ValueError("fibrancy test needs a simply connected coalgebra")
    n = x.maxdeg if through_degree is None else through_degree
    if n > x.maxdeg:
        raise ValueError(f"through_degree {n} exceeds the window {x.maxdeg}")
    s0 = trivial_comodule(sphere(x.field, 0, 1, x.maxdeg), c, "S0")
    dims = cotor_cobar(x, s0, 1).dims
    for p in range(n + 1):
        if dims[p]:
            return FibrancyResult(False, n, p, f"CoTor^1(X, S^0) nonzero in chain degree {p}")
    return FibrancyResult(True, n)


def is_fibration(f: ComoduleMap, through_degree: int | None = None, witness=None) -> FibrancyResult:
    """Fibration test.

    A degreewise epimorphism is a fibration iff its kernel is fibrant.  A map
    that is not onto is accepted only with a verified pullback ``witness``
    exhibiting it as a base change of a generating fibration; otherwise the
    answer is inconclusive (``value=None``).
    """
    n = f.maxdeg if through_degree is None else through_degree
    if f.is_surjective():
        (k, _), _ = kernel_cokernel(f)
        r = is_fibrant(k, n)
        return FibrancyResult(r.value, n, r.certificate,
                              "kernel fibrant" if r.value else "kernel not fibrant: " + r.reason)
    if witness is not None:
        rep = witness.verify(f)
        if rep:
            return FibrancyResult(True, n, None, "pullback of a generating fibration")
        return FibrancyResult(False, n, rep.degree, "witness rejected: " + rep.message)
    return FibrancyResult(None, n, None, "not an epimorphism; no pullback witness given")


def restrict_comodule(x: DGComodule, maxdeg: int, coalgebra: DGCoalgebra | None = None) -> DGComodule:
    """Brutal truncation to a smaller window (over the correspondingly truncated coalgebra)."""
    if maxdeg > x.maxdeg:
        raise ValueError("can only restrict to a smaller window")
    c = coalgebra or x.coalgebra.with_maxdeg(maxdeg)
    X = x.carrier.with_maxdeg(maxdeg)
    xc = tensor(X, c.carrier, maxdeg)
    rho = ChainMap(X, xc, x.coaction.mats[:maxdeg + 1])
    left = None
    if x.left_given is not None:
        left = ChainMap(X, tensor(c.carrier, X, maxdeg), x.left_given.mats[:maxdeg + 1])
    return DGComodule(c, X, rho, left, x.name)


def restrict_map(f: ComoduleMap, source: DGComodule, target: DGComodule) -> ComoduleMap:
    return ComoduleMap(source, target,
                       ChainMap(source.carrier, target.carrier, f.map.mats[:source.maxdeg + 1]))
