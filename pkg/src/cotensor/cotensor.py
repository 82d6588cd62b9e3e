"""Cotensor products, the conormalized cobar bicomplex, CoTor, Ext, change of coalgebras."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .chain_complex import (
    ChainComplex,
    ChainMap,
    Report,
    associator,
    identity_map,
    inverse_permutation_map,
    tensor,
    tensor_maps,
    validate_chain_map,
)
from .coalgebra import CoalgebraMap, DGCoalgebra, validate_coalgebra_map
from .comodule import (
    ComoduleMap,
    DGComodule,
    HomSpace,
    cofree,
    hom_comodule,
    kernel_cokernel,
    subcomodule,
    validate_comodule_map,
)
from .field_linalg import Matrix, kernel_basis, rank, same_span, solve_many

__all__ = [
    "Cotensor",
    "CobarBicomplex",
    "GradedDims",
    "Resolution",
    "cotensor",
    "cotensor_with",
    "tensor_comodule",
    "cotensor_assoc_check",
    "cobar_bicomplex",
    "cotor_cobar",
    "cotor",
    "injective_resolution",
    "cotor_resolution",
    "ext",
    "corestrict",
    "coinduce",
    "coinduce_counit",
    "corestrict_coinduce_unit",
]


@dataclass(frozen=True, eq=False)
class Cotensor:
    """``X□Y`` as a subcomplex of ``X⊗Y``; ``comodule`` is set when C is cocommutative."""

    complex: ChainComplex
    inclusion: ChainMap
    comodule: DGComodule | None = None

    @property
    def dims(self):
        return self.complex.dims


def tensor_comodule(m: ChainComplex, y: DGComodule) -> DGComodule:
    """``M⊗Y`` with coaction through ``Y``."""
    C, N = y.coalgebra.carrier, y.maxdeg
    my = tensor(m, y.carrier, N)
    step = tensor_maps(identity_map(m), y.coaction, source=my)
    back = inverse_permutation_map(associator(m, y.carrier, C, N, target=step.target))
    return DGComodule(y.coalgebra, my, ChainMap(my, back.target, (back @ step).mats))


def _equalizer_basis(x: DGComodule, lam: ChainMap, xy: ChainComplex):
    """Kernel of ``ρ_X⊗id - id⊗λ`` on ``X⊗Y`` (both landing in ``(X⊗C)⊗Y``)."""
    N = x.maxdeg
    C = x.coalgebra.carrier
    Y = lam.source
    a = tensor_maps(x.coaction, identity_map(Y), source=xy)
    b = tensor_maps(identity_map(x.carrier), lam, source=xy)
    b = inverse_permutation_map(associator(x.carrier, C, Y, N, target=b.target)) @ b
    return [kernel_basis(a[n] - b[n]) for n in range(N + 1)]


def cotensor_with(x: DGComodule, y: ChainComplex, lam: ChainMap) -> Cotensor:
    """``X□Y`` for a left coaction ``lam: Y -> C⊗Y`` given directly."""
    N = x.maxdeg
    xy = tensor(x.carrier, y, N)
    basis = _equalizer_basis(x, lam, xy)
    diffs = {}
    for n in range(1, N + 1):
        sol = solve_many(basis[n - 1], xy.d(n) @ basis[n])
        assert sol is not None, "cotensor is not a subcomplex"
        diffs[n] = sol
    P = ChainComplex.build(x.field, [b.cols for b in basis], diffs, N)
    return Cotensor(P, ChainMap(P, xy, tuple(basis)))


def cotensor(x: DGComodule, y: DGComodule) -> Cotensor:
    """Degreewise equalizer of ``ρ_X⊗id_Y`` and ``id_X⊗λ_Y``."""
    if x.coalgebra is not y.coalgebra and x.coalgebra.carrier != y.coalgebra.carrier:
        raise ValueError("comodules over different coalgebras")
    if x.maxdeg != y.maxdeg:
        raise ValueError("comodules have different windows")
    base = cotensor_with(x, y.carrier, y.left)
    if not x.coalgebra.cocommutative:
        return base
    amb = tensor_comodule(x.carrier, y)
    sub, inc = subcomodule(amb, base.inclusion.mats, "")
    return Cotensor(sub.carrier, inc.map, sub)


def cotensor_assoc_check(x: DGComodule, y: DGComodule, z: DGComodule) -> Report:
    """Compare ``(X□Y)□Z`` and ``X□(Y□Z)`` inside ``X⊗(Y⊗Z)``.

    ``flags["iso"]`` holds the mediating isomorphism (a ChainMap) when they agree.
    """
    if not x.coalgebra.cocommutative:
        raise ValueError("associativity check needs a cocommutative coalgebra")
    N = x.maxdeg
    xy = cotensor(x, y)
    left = cotensor(xy.comodule, z)
    yz = cotensor(y, z)
    right = cotensor(x, yz.comodule)
    X, Y, Z = x.carrier, y.carrier, z.carrier
    a = associator(X, Y, Z, N)
    l_in = a @ tensor_maps(xy.inclusion, identity_map(Z), source=left.inclusion.target,
                           target=a.source) @ left.inclusion
    r_in = tensor_maps(identity_map(X), yz.inclusion, source=right.inclusion.target,
                       target=a.target) @ right.inclusion
    mats = []
    for n in range(N + 1):
        if left.dims[n] != right.dims[n]:
            return Report.fail(n, "dimensions differ")
        if not same_span(l_in[n], r_in[n]):
            return Report.fail(n, "the two equalizers are different subspaces")
        mats.append(solve_many(r_in[n], l_in[n]))
    iso = ChainMap(left.complex, right.complex, tuple(mats))
    if not validate_chain_map(iso):
        return Report.fail(None, "mediating map is not a chain map")
    return Report(True, None, "", {"iso": iso, "dims": list(left.dims)})


# ---------------------------------------------------------------------------
# cobar bicomplex


@dataclass(frozen=True, eq=False)
class CobarBicomplex:
    """Rows ``Ω̄^q = X⊗C̄^{⊗q}⊗Y`` (left-nested) for ``q = 0..qmax``.

    ``horizontal[q]`` is the cobar differential ``Ω̄^q -> Ω̄^{q+1}`` (for ``q < qmax``).
    The vertical differential on row ``q`` is the internal one times ``(-1)^q``.
    Total degree of ``(q, p)`` is ``p - q``.
    """

    rows: tuple[ChainComplex, ...]
    horizontal: tuple[ChainMap, ...]
    maxdeg: int

    @property
    def qmax(self) -> int:
        return len(self.rows) - 1

    @property
    def field(self):
        return self.rows[0].field

    def dim(self, q: int, p: int) -> int:
        if 0 <= q <= self.qmax:
            return self.rows[q].dim(p)
        return 0

    def vertical(self, q: int, p: int) -> Matrix:
        d = self.rows[q].d(p)
        return -d if q % 2 else d

    def h(self, q: int, p: int) -> Matrix:
        """Horizontal map ``(q, p) -> (q+1, p)``."""
        if 0 <= q < self.qmax:
            return self.horizontal[q][p]
        return self.field.zeros(self.dim(q + 1, p), self.dim(q, p))

    def total_dims(self, t: int) -> list[tuple[int, int, int]]:
        """Cells ``(q, p, dim)`` of total degree ``t``."""
        out = []
        for q in range(self.qmax + 1):
            p = t + q
            if 0 <= p <= self.maxdeg and self.dim(q, p):
                out.append((q, p, self.dim(q, p)))
        return out

    def total_differential(self, t: int) -> Matrix:
        """``D = vertical + horizontal`` from total degree ``t`` to ``t - 1``."""
        field = self.field
        src = [(q, t + q) for q in range(self.qmax + 1)]
        tgt = [(q, t - 1 + q) for q in range(self.qmax + 1)]
        rs = [self.dim(q, p) for q, p in tgt]
        cs = [self.dim(q, p) for q, p in src]
        grid = {}
        for k, (q, p) in enumerate(src):
            if cs[k] == 0:
                continue
            if p >= 1 and rs[k]:
                grid[(k, k)] = self.vertical(q, p)
            if k + 1 < len(tgt) and rs[k + 1]:
                grid[(k + 1, k)] = self.h(q, p)
        return Matrix.blocks(field, grid, rs, cs)

    def safe_total_degree(self) -> int:
        """Largest total degree whose homology is unaffected by the window and ``qmax``.

        Nonzero cells satisfy ``p >= 2q``, so total degree ``t`` only meets rows
        ``q <= t``; homology in degree ``t`` needs rows up to ``t + 1`` and
        chain degrees up to ``2t + 2``.
        """
        return min((self.maxdeg - 2) // 2, self.qmax - 1)


def _reduced(c: DGCoalgebra):
    cbar = c.coideal
    return cbar.complex, cbar.projection, cbar.reduced_comult


def cobar_bicomplex(x: DGComodule, y: DGComodule, qmax: int) -> CobarBicomplex:
    c = x.coalgebra
    if not c.simply_connected:
        raise ValueError("cobar bicomplex needs a simply connected coalgebra")
    N = x.maxdeg
    B, pi, dbar = _reduced(c)
    X, Y = x.carrier, y.carrier
    rho_bar = tensor_maps(identity_map(X), pi, source=x.xc) @ x.coaction
    lam = y.left
    lam_bar = tensor_maps(pi, identity_map(Y), source=lam.target) @ lam
    idB, idY = identity_map(B), identity_map(Y)
    # T_q = ((X⊗B)⊗B)...⊗B and the cofaces T_q -> T_{q+1}
    T = [X]
    for q in range(qmax + 1):
        T.append(tensor(T[-1], B, N))
    faces = []  # faces[q][i] : T_q -> T_{q+1}, i = 0..q
    for q in range(qmax + 1):
        fq = []
        for i in range(q + 1):
            if q == 0:
                fq.append(ChainMap(X, T[1], rho_bar.mats))
            elif i < q:
                fq.append(tensor_maps(faces[q - 1][i], idB, source=T[q], target=T[q + 1]))
            else:
                step = tensor_maps(identity_map(T[q - 1]), dbar, source=T[q])
                back = inverse_permutation_map(associator(T[q - 1], B, B, N, source=T[q + 1],
                                                          target=step.target))
                fq.append(back @ step)
        faces.append(fq)
    rows = [tensor(T[q], Y, N) for q in range(qmax + 2)]
    horiz = []
    for q in range(qmax):
        src, tgt = rows[q], rows[q + 1]
        total = None
        for i in range(q + 1):
            term = tensor_maps(faces[q][i], idY, source=src, target=tgt)
            term = term if i % 2 == 0 else -term
            total = term if total is None else total + term
        step = tensor_maps(identity_map(T[q]), lam_bar, source=src)
        back = inverse_permutation_map(associator(T[q], B, Y, N, source=tgt, target=step.target))
        last = back @ step
        total = total + (last if (q + 1) % 2 == 0 else -last)
        horiz.append(total)
    return CobarBicomplex(tuple(rows[:qmax + 1]), tuple(horiz), N)


@dataclass(frozen=True)
class GradedDims:
    """Dimensions per chain degree ``0..maxdeg`` and the range where they are exact."""

    dims: tuple[int, ...]
    exact_through: int
    label: str = ""

    def nonzero(self):
        return [(p, d) for p, d in enumerate(self.dims) if d]


def cotor_cobar(x: DGComodule, y: DGComodule, q: int, bicomplex: CobarBicomplex | None = None) -> GradedDims:
    """``CoTor^q(X, Y)`` per chain degree: cohomology of the cobar rows."""
    b = bicomplex if bicomplex is not None and bicomplex.qmax >= q + 1 else cobar_bicomplex(x, y, q + 1)
    dims = []
    for p in range(b.maxdeg + 1):
        out = b.h(q, p)
        inc = b.h(q - 1, p) if q >= 1 else b.field.zeros(b.dim(q, p), 0)
        dims.append(b.dim(q, p) - rank(out) - rank(inc))
    return GradedDims(tuple(dims), b.maxdeg, f"CoTor^{q}")


def cotor(x: DGComodule, y: DGComodule, i: int, through_degree: int | None = None) -> GradedDims:
    r = cotor_cobar(x, y, i)
    n = r.exact_through if through_degree is None else min(through_degree, r.exact_through)
    return GradedDims(r.dims[:n + 1], n, r.label)


# ---------------------------------------------------------------------------
# injective resolutions


@dataclass(frozen=True, eq=False)
class Resolution:
    """``0 -> Y -> I^0 -> I^1 -> ...`` with cofree ``I^k = U(K^k)⊗C``."""

    base: DGComodule
    terms: tuple[DGComodule, ...]
    coaugmentation: ComoduleMap            # Y -> I^0
    maps: tuple[ComoduleMap, ...]          # I^k -> I^{k+1}

    def verify(self) -> Report:
        N = self.base.maxdeg
        seq = [self.coaugmentation] + list(self.maps)
        for n in range(N + 1):
            if rank(seq[0][n]) != seq[0][n].cols:
                return Report.fail(n, "Y -> I^0 is not injective")
            for k in range(len(seq) - 1):
                a, b = seq[k][n], seq[k + 1][n]
                if not (b @ a).is_zero():
                    return Report.fail(n, f"maps {k}, {k + 1} do not compose to zero")
                if rank(a) != b.cols - rank(b):
                    return Report.fail(n, f"not exact at I^{k}")
        for f in seq:
            r = validate_comodule_map(f)
            if not r:
                return r
        return Report(True)


def injective_resolution(y: DGComodule, length: int) -> Resolution:
    c = y.coalgebra
    i0 = cofree(y.carrier, c, "I0")
    coaug = ComoduleMap(y, i0, ChainMap(y.carrier, i0.carrier, y.coaction.mats))
    terms, maps = [i0], []
    prev = coaug
    for k in range(length):
        _, (kq, q) = kernel_cokernel(prev)
        nxt = cofree(kq.carrier, c, f"I{k + 1}")
        emb = ComoduleMap(kq, nxt, ChainMap(kq.carrier, nxt.carrier, kq.coaction.mats))
        m = emb @ q
        terms.append(nxt)
        maps.append(m)
        prev = m
    return Resolution(y, tuple(terms), coaug, tuple(maps))


def cotor_resolution(x: DGComodule, y: DGComodule, i: int) -> GradedDims:
    """``CoTor^i`` as cohomology of ``X□I^•`` for an injective resolution of ``Y``."""
    res = injective_resolution(y, i + 1)
    N = x.maxdeg
    cots = [cotensor(x, t) for t in res.terms[:i + 2]]

    def induced(k):
        # X□I^k -> X□I^{k+1}
        src, tgt = cots[k], cots[k + 1]
        amb = tensor_maps(identity_map(x.carrier), res.maps[k].map,
                          source=src.inclusion.target, target=tgt.inclusion.target)
        mats = []
        for n in range(N + 1):
            sol = solve_many(tgt.inclusion[n], amb[n] @ src.inclusion[n])
            assert sol is not None
            mats.append(sol)
        return mats

    out_m = induced(i)
    in_m = induced(i - 1) if i >= 1 else None
    dims = []
    for n in range(N + 1):
        d = cots[i].dims[n] - rank(out_m[n]) - (rank(in_m[n]) if in_m else 0)
        dims.append(d)
    return GradedDims(tuple(dims), N, f"CoTor^{i}")


def _hom_post(x: DGComodule, f: ComoduleMap, m: int, src: HomSpace, tgt: HomSpace) -> Matrix:
    """Postcomposition ``Hom_C(X, A)_m -> Hom_C(X, B)_m`` in basis coordinates."""
    field = x.field
    if src.dim == 0:
        return field.zeros(tgt.dim, 0)
    cols = []
    for k in range(src.dim):
        fs = src.unpack(src.basis.col_block(k, k + 1))
        vec = np.zeros(tgt.ambient, dtype=field.dtype)
        for i, off, r, c in tgt.blocks:
            if i in fs:
                vec[off:off + r * c] = (f[i + m] @ fs[i]).a.reshape(-1)
        cols.append(vec)
    amb = Matrix._wrap(field, np.array(cols, dtype=field.dtype).T.reshape(tgt.ambient, src.dim))
    if tgt.dim == 0:
        return field.zeros(0, src.dim)
    sol = solve_many(tgt.basis, amb)
    assert sol is not None, "postcomposition left the comodule maps"
    return sol


def ext(x: DGComodule, y: DGComodule, i: int, degrees) -> dict[int, tuple[int, bool]]:
    """``Ext^i_C(X, Y)_m = H^i(Hom_C(X, I^•))_m`` for each ``m`` in ``degrees``.

    Returns ``{m: (dim, exact)}``.
    """
    res = injective_resolution(y, i + 1)
    out = {}
    for m in degrees:
        homs = [hom_comodule(x, t, m) for t in res.terms[:i + 2]]
        exact = all(h.exact for h in homs)
        outm = _hom_post(x, res.maps[i], m, homs[i], homs[i + 1])
        inm = _hom_post(x, res.maps[i - 1], m, homs[i - 1], homs[i]) if i >= 1 else None
        d = homs[i].dim - rank(outm) - (rank(inm) if inm is not None else 0)
        out[m] = (d, exact)
    return out


# ---------------------------------------------------------------------------
# change of coalgebras


def corestrict(x: DGComodule, g: CoalgebraMap) -> DGComodule:
    """``g^*X``: same carrier, coaction ``(id⊗g)ρ``."""
    r = validate_coalgebra_map(g)
    if not r:
        raise ValueError(f"not a coalgebra map: {r.message} (degree {r.degree})")
    D = g.target
    xd = tensor(x.carrier, D.carrier, x.maxdeg)
    rho = tensor_maps(identity_map(x.carrier), g.map, source=x.xc, target=xd) @ x.coaction
    left = None
    if x.left_given is not None:
        dx = tensor(D.carrier, x.carrier, x.maxdeg)
        left = tensor_maps(g.map, identity_map(x.carrier), source=x.left.target, target=dx) @ x.left
    return DGComodule(D, x.carrier, rho, left, x.name)


def _left_along(g: CoalgebraMap) -> ChainMap:
    """``C`` as a left D-comodule: ``(g⊗id)Δ_C``."""
    C = g.source
    dc = tensor(g.target.carrier, C.carrier, C.maxdeg)
    return tensor_maps(g.map, identity_map(C.carrier), source=C.comult.target, target=dc) @ C.comult


def coinduce(x: DGComodule, g: CoalgebraMap) -> tuple[DGComodule, ChainMap]:
    """``X□_D C`` as a C-comodule, with its inclusion into ``X⊗C``."""
    r = validate_coalgebra_map(g)
    if not r:
        raise ValueError(f"not a coalgebra map: {r.message} (degree {r.degree})")
    C = g.source
    base = cotensor_with(x, C.carrier, _left_along(g))
    amb = cofree(x.carrier, C)
    sub, inc = subcomodule(amb, base.inclusion.mats, f"coind({x.name})" if x.name else "")
    return sub, inc.map


def coinduce_counit(x: DGComodule, g: CoalgebraMap) -> ComoduleMap:
    """``g^*(X□_D C) -> X`` induced by ``id⊗ε_C``, a map of D-comodules."""
    sub, inc = coinduce(x, g)
    C = g.source
    eps = tensor_maps(identity_map(x.carrier), C.counit, source=inc.target)
    f = ChainMap(sub.carrier, x.carrier, (eps @ inc).mats)
    return ComoduleMap(corestrict(sub, g), x, f)


def corestrict_coinduce_unit(z: DGComodule, g: CoalgebraMap) -> ComoduleMap:
    """``Z -> (g^*Z)□_D C`` given by the coaction of ``Z``."""
    sub, inc = coinduce(corestrict(z, g), g)
    mats = []
    for n in range(z.maxdeg + 1):
        sol = solve_many(inc[n], z.coaction[n])
        if sol is None:
            raise AssertionError("coaction does not land in the cotensor")
        mats.append(sol)
    return ComoduleMap(z, sub, ChainMap(z.carrier, sub.carrier, tuple(mats)))
