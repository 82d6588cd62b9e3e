"""Postnikov towers of comodules and the cofibration / tower factorization.

Every stage is a pullback of a generating fibration

    D^n(V)⊗C -> S^n(V)⊗C   (n >= 1)      or      0 -> S^0(V)⊗C

along a classifying map out of the previous stage.  Pullback bases keep the
basis of the previous stage in front, so degrees that a stage does not touch
are bit-identical to the stage before.

Window bookkeeping: building a stage that fixes ``H_n`` needs ``H_n`` of the
previous stage exactly, so ``n <= maxdeg - 1``.  A tower ``X(0), ..., X(S-1)``
therefore needs ``maxdeg >= S``; its limit is exact through degree ``S - 2``
and has exact homology through degree ``S - 3``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chain_complex import (
    ChainMap,
    Report,
    disk,
    homology_map,
    is_quasi_iso,
    sphere,
)
from .comodule import (
    ComoduleMap,
    DGComodule,
    Pullback,
    cofree,
    cofree_adjoint,
    cofree_map,
    comodule_direct_sum,
    comodule_pullback,
    is_fibration,
    kernel_cokernel,
    restrict_comodule,
    restrict_map,
    validate_comodule,
    validate_comodule_map,
    zero_comodule,
    zero_comodule_map,
)
from .field_linalg import Matrix, column_basis, complement_basis, kernel_basis, rank, solve_many

__all__ = [
    "PullbackWitness",
    "Stage",
    "PostnikovTower",
    "Factorization",
    "StabilizedLimit",
    "classifying_map",
    "generating_fibration",
    "fix_homology_step",
    "factor_step",
    "degree_zero_step",
    "postnikov_tower",
    "stabilized_limit",
    "verify_tower",
    "factorize",
]


# ---------------------------------------------------------------------------
# generating fibrations and witnesses


def generating_fibration(c, n: int, v: int) -> ComoduleMap:
    """``D^n(V)⊗C -> S^n(V)⊗C`` for ``n >= 1``, or ``0 -> S^0(V)⊗C`` for ``n == 0``."""
    f, N = c.field, c.maxdeg
    s = cofree(sphere(f, n, v, N), c, f"S{n}(V)xC")
    if n == 0:
        z = zero_comodule(c)
        return zero_comodule_map(z, s)
    D = disk(f, n, v, N)
    g = ChainMap.build(D, sphere(f, n, v, N), {n: f.identity(v)})
    return cofree_map(g, c, target=s)


def classifying_map(y: DGComodule, n: int, fn: Matrix) -> ComoduleMap:
    """The comodule map ``Y -> S^n(V)⊗C`` adjoint to ``fn: Y_n -> V``."""
    f, N = y.field, y.maxdeg
    S = sphere(f, n, fn.rows, N)
    phi = ChainMap.build(y.carrier, S, {n: fn})
    return cofree_adjoint(y, phi, target=cofree(S, y.coalgebra, f"S{n}(V)xC"))


@dataclass(frozen=True, eq=False)
class PullbackWitness:
    """Square exhibiting ``P -> Y`` as the base change of a generating fibration along ``f``."""

    n: int
    v: int
    pullback: Pullback
    classifying: ComoduleMap      # Y -> S^n(V)⊗C
    generating: ComoduleMap       # D^n(V)⊗C -> S^n(V)⊗C  or  0 -> S^0(V)⊗C

    def verify(self, h: ComoduleMap | None = None) -> Report:
        pb, f, g = self.pullback, self.classifying, self.generating
        N = pb.obj.maxdeg
        if h is not None:
            for k in range(N + 1):
                if h[k] != pb.to_x[k]:
                    return Report.fail(k, "map is not the pullback leg")
        ref = generating_fibration(g.source.coalgebra, self.n, self.v)
        for k in range(N + 1):
            if g[k] != ref[k] or g.source.dims != ref.source.dims:
                return Report.fail(k, "right-hand map is not a generating fibration")
        for leg in (pb.to_x, pb.to_y, f, g):
            r = validate_comodule_map(leg)
            if not r:
                return Report.fail(r.degree, "square contains a non-comodule map")
        lhs, rhs = f.map @ pb.to_x.map, g.map @ pb.to_y.map
        for k in range(N + 1):
            if lhs[k] != rhs[k]:
                return Report.fail(k, "square does not commute")
            both = Matrix.hstack(f.map.field, [f[k], -g[k]], rows=f[k].rows)
            kdim = both.cols - rank(both)
            if rank(pb.inclusion[k]) != pb.obj.carrier.dim(k) or pb.obj.carrier.dim(k) != kdim:
                return Report.fail(k, "square is not a pullback")
        return Report(True)


# ---------------------------------------------------------------------------
# single steps


@dataclass(frozen=True, eq=False)
class Stage:
    """Result of one pullback step ``P -> Y`` with ``X -> P`` when an inclusion is tracked."""

    obj: DGComodule
    projection: ComoduleMap           # P -> Y
    inclusion: ComoduleMap | None     # X -> P
    v: int
    n: int
    witness: PullbackWitness


def fix_homology_step(x: DGComodule, n: int, fn: Matrix) -> Stage:
    """Pull back ``D^n(V)⊗C -> S^n(V)⊗C`` along the map classified by ``fn: X_n -> V``.

    ``fn`` must kill the boundaries and be onto on the cycles; then
    ``H_i(P) = H_i(X)`` for ``i < n`` and ``H_n(P) = ker H_n(f)``.
    """
    if n < 1:
        raise ValueError("use degree_zero_step for n = 0")
    c = x.coalgebra
    if not c.simply_connected:
        raise ValueError("fixing homology needs a simply connected coalgebra")
    X = x.carrier
    if fn.cols != X.dim(n):
        raise ValueError(f"f_n must have {X.dim(n)} columns")
    if not (fn @ X.d(n + 1)).is_zero():
        raise ValueError(f"f_{n} does not vanish on boundaries")
    z = kernel_basis(X.d(n))
    if rank(fn @ z) != fn.rows:
        raise ValueError(f"f_{n} is not onto when restricted to cycles")
    f = classifying_map(x, n, fn)
    g = generating_fibration(c, n, fn.rows)
    pb = comodule_pullback(f, g, f"{x.name}|{n}" if x.name else "")
    w = PullbackWitness(n, fn.rows, pb, f, g)
    return Stage(pb.obj, pb.to_x, None, fn.rows, n, w)


def _check_cofibration(j: ComoduleMap, upto: int):
    if not j.is_injective():
        bad = next(k for k in range(j.maxdeg + 1) if rank(j[k]) != j[k].cols)
        raise ValueError(f"j is not injective in degree {bad}")
    for i in range(upto + 1):
        h = homology_map(j.map, i)
        if rank(h) != h.cols:
            raise ValueError(f"H_{i}(j) is not injective")


def _killing_functional(j: ComoduleMap, n: int) -> Matrix:
    """``f_n: Y_n -> V = coker H_n(j)``, zero on boundaries, on ``j(X_n)`` and on a
    chosen complement of the cycles that contains ``j`` of a complement of ``Z_n(X)``."""
    X, Y = j.source.carrier, j.target.carrier
    field = X.field
    zy = kernel_basis(Y.d(n))
    zx = kernel_basis(X.d(n))
    known = Matrix.hstack(field, [Y.d(n + 1), j[n] @ zx], rows=Y.dim(n))
    s = column_basis(known)
    vreps = complement_basis(s, zy)
    jt = j[n] @ complement_basis(zx)
    head = Matrix.hstack(field, [s, vreps, jt], rows=Y.dim(n))
    rest = complement_basis(head)
    full = Matrix.hstack(field, [head, rest], rows=Y.dim(n))
    inv = solve_many(full, field.identity(Y.dim(n)))
    if inv is None:
        raise AssertionError("cycle decomposition is not a basis")
    return inv.row_block(s.cols, s.cols + vreps.cols)


def factor_step(j: ComoduleMap, n: int) -> Stage:
    """Factor a cofibration ``j: X -> Y`` (injective on homology) through ``F_n(Y) -> Y``
    so that ``H_n`` becomes an isomorphism and lower homology is untouched."""
    if n < 1:
        return degree_zero_step(j)
    if n > j.maxdeg - 1:
        raise ValueError(f"H_{n} is not exact in a window of size {j.maxdeg}")
    _check_cofibration(j, n)
    fn = _killing_functional(j, n)
    st = fix_homology_step(j.target, n, fn)
    pb = st.witness.pullback
    zero = zero_comodule_map(j.source, st.witness.generating.source)
    inc = pb.mediate(j, zero)
    if inc is None:
        raise AssertionError("j does not factor through the pullback")
    return Stage(st.obj, st.projection, inc, st.v, n, st.witness)


def degree_zero_step(j: ComoduleMap) -> Stage:
    """Pull back ``0 -> S^0(V)⊗C`` with ``V = coker H_0(j)``."""
    _check_cofibration(j, 0)
    Y = j.target.carrier
    field = Y.field
    known = Matrix.hstack(field, [Y.d(1), j[0]], rows=Y.dim(0))
    q = solve_many(Matrix.hstack(field, [column_basis(known), complement_basis(column_basis(known))],
                                 rows=Y.dim(0)), field.identity(Y.dim(0)))
    s = column_basis(known).cols
    f0 = q.row_block(s, Y.dim(0))
    c = j.source.coalgebra
    f = classifying_map(j.target, 0, f0)
    g = generating_fibration(c, 0, f0.rows)
    pb = comodule_pullback(f, g, "G0")
    w = PullbackWitness(0, f0.rows, pb, f, g)
    inc = pb.mediate(j, zero_comodule_map(j.source, g.source))
    if inc is None:
        raise AssertionError("j does not factor through the degree-zero pullback")
    return Stage(pb.obj, pb.to_x, inc, f0.rows, 0, w)


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True, eq=False)
class PostnikovTower:
    """Stages ``X(0) = 0, X(1) = U(X)⊗C, X(2), ...``.

    ``connecting[n]`` is ``X(n) -> X(n-1)`` (``connecting[0]`` is None),
    ``inclusions[n]`` is ``X -> X(n)``, ``V[n]`` the dimension attached at stage ``n``
    and ``witnesses[n]`` the pullback square for ``n >= 2``.
    """

    base: DGComodule
    stages: tuple[DGComodule, ...]
    inclusions: tuple[ComoduleMap, ...]
    connecting: tuple[ComoduleMap | None, ...]
    V: tuple[int, ...]
    witnesses: tuple[PullbackWitness | None, ...]

    @property
    def count(self) -> int:
        return len(self.stages)

    def replace_stage(self, n: int, obj: DGComodule) -> "PostnikovTower":
        """Copy with stage ``n`` swapped (for tests that tamper with a tower)."""
        stages = list(self.stages)
        stages[n] = obj
        return PostnikovTower(self.base, tuple(stages), self.inclusions, self.connecting,
                              self.V, self.witnesses)


def postnikov_tower(x: DGComodule, stages: int) -> PostnikovTower:
    """Build ``X(0), ..., X(stages - 1)``; needs ``stages <= x.maxdeg``."""
    c = x.coalgebra
    if not c.simply_connected:
        raise ValueError("Postnikov towers need a simply connected coalgebra")
    if stages < 2:
        raise ValueError("a tower needs at least the stages X(0) and X(1)")
    if stages > x.maxdeg:
        raise ValueError(f"{stages} stages need a window of at least {stages}, got {x.maxdeg}")
    z = zero_comodule(c)
    x1 = cofree(x.carrier, c, "X(1)")
    inc1 = ComoduleMap(x, x1, ChainMap(x.carrier, x1.carrier, x.coaction.mats))
    objs = [z, x1]
    incs = [zero_comodule_map(x, z), inc1]
    conn = [None, zero_comodule_map(x1, z)]
    V = [0, 0]
    wit = [None, None]
    for n in range(2, stages):
        st = factor_step(incs[-1], n)
        objs.append(_named(st.obj, f"X({n})"))
        incs.append(ComoduleMap(x, objs[-1], st.inclusion.map))
        conn.append(ComoduleMap(objs[-1], objs[-2], st.projection.map))
        V.append(st.v)
        wit.append(st.witness)
    return PostnikovTower(x, tuple(objs), tuple(incs), tuple(conn), tuple(V), tuple(wit))


def _named(x: DGComodule, name: str) -> DGComodule:
    return DGComodule(x.coalgebra, x.carrier, x.coaction, x.left_given, name)


@dataclass(frozen=True, eq=False)
class StabilizedLimit:
    """The limit restricted to the degrees where the tower has stabilized."""

    obj: DGComodule
    inclusion: ComoduleMap       # X (restricted) -> limit
    exact_through: int           # window of obj
    homology_exact_through: int


def stabilized_limit(t: PostnikovTower) -> StabilizedLimit:
    if t.count < 3:
        raise ValueError("need at least three stages to stabilize anything beyond degree 0")
    w = t.count - 2
    top = t.stages[-1]
    obj = restrict_comodule(top, w)
    base = restrict_comodule(t.base, w, coalgebra=obj.coalgebra)
    inc = restrict_map(t.inclusions[-1], base, obj)
    return StabilizedLimit(_named(obj, "limit"), inc, w, w - 1)


def verify_tower(t: PostnikovTower) -> Report:
    """Check every invariant of a tower; failures name the stage and the check."""
    x = t.base
    N = x.maxdeg

    def fail(stage, check, degree=None, msg=""):
        return Report(False, degree, f"stage {stage}: {check} {msg}".strip(),
                      {"stage": stage, "check": check})

    for n, obj in enumerate(t.stages):
        r = validate_comodule(obj)
        if not r:
            return fail(n, "comodule", r.degree, r.message)
    for n in range(1, t.count):
        inc = t.inclusions[n]
        if inc.target is not t.stages[n] and inc.target.carrier != t.stages[n].carrier:
            return fail(n, "inclusion target")
        r = validate_comodule_map(inc)
        if not r:
            return fail(n, "inclusion", r.degree, r.message)
        if not inc.is_injective():
            return fail(n, "inclusion injective")
        for i in range(min(n, N - 1) + 1):
            h = homology_map(inc.map, i)
            if h.rows != h.cols or rank(h) != h.rows:
                return fail(n, "homology", i, f"H_{i}(X) -> H_{i}(X({n})) is not an isomorphism")
        p = t.connecting[n]
        r = validate_comodule_map(p)
        if not r:
            return fail(n, "connecting", r.degree, r.message)
        if p.map @ inc.map != t.inclusions[n - 1].map:
            return fail(n, "compatibility", None, "connecting map does not commute with inclusions")
        if n >= 2:
            w = t.witnesses[n]
            r = w.verify(p)
            if not r:
                return fail(n, "witness", r.degree, r.message)
            fiber = sphere(x.field, n - 1, t.V[n], N)
            expect = cofree(fiber, x.coalgebra).dims
        else:
            expect = t.stages[1].dims
        if not p.is_surjective():
            return fail(n, "epimorphism")
        (k, _), _ = kernel_cokernel(p)
        if k.dims != expect:
            return fail(n, "fiber", None, f"kernel dims {list(k.dims)} != {list(expect)}")
        fr = is_fibration(p)
        if not fr.value:
            return fail(n, "fibration", fr.certificate, fr.reason)
    for n in range(t.count - 2):
        a, b = t.stages[n + 1], t.stages[n + 2]
        for i in range(n + 1):
            if a.carrier.dim(i) != b.carrier.dim(i):
                return fail(n + 2, "stabilization", i, "dims differ")
            if a.carrier.d(i) != b.carrier.d(i) or a.coaction[i] != b.coaction[i]:
                return fail(n + 2, "stabilization", i, "structure differs")
            if t.connecting[n + 2][i] != x.field.identity(a.carrier.dim(i)):
                return fail(n + 2, "stabilization", i, "connecting map is not the identity")
    return Report(True)


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True, eq=False)
class Factorization:
    """``f = q ∘ j̃`` with ``j̃`` a mono quasi-isomorphism and ``q`` a tower of generating pullbacks.

    ``stages[0]`` is ``G_0(W)``; ``connecting[k]`` is ``G_k -> G_{k-1}`` (``k >= 1``)
    and ``connecting[0]`` is ``G_0 -> W``.  The limit objects are restricted to
    the window ``exact_through``.
    """

    f: ComoduleMap
    W: DGComodule
    j: ComoduleMap
    p: ComoduleMap
    stages: tuple[DGComodule, ...]
    inclusions: tuple[ComoduleMap, ...]
    connecting: tuple[ComoduleMap, ...]
    witnesses: tuple[PullbackWitness, ...]
    V: tuple[int, ...]
    limit: DGComodule
    j_tilde: ComoduleMap
    q: ComoduleMap
    exact_through: int

    def verify(self) -> Report:
        N = self.exact_through
        comp = self.q.map @ self.j_tilde.map
        for k in range(N + 1):
            if comp[k] != self.f[k]:
                return Report.fail(k, "composite differs from f")
        if not self.j_tilde.is_injective():
            return Report.fail(None, "j~ is not injective")
        if not is_quasi_iso(self.j_tilde.map, N - 1):
            return Report.fail(None, "j~ is not a quasi-isomorphism in the exact window")
        for m in (self.j_tilde, self.q):
            r = validate_comodule_map(m)
            if not r:
                return r
        r = is_fibration(self.p)
        if not r.value:
            return Report.fail(r.certificate, "W -> Y is not a fibration")
        for k, (h, w) in enumerate(zip(self.connecting, self.witnesses)):
            r = is_fibration(h, witness=w)
            if not r.value:
                return Report.fail(r.certificate, f"connecting map {k} is not a fibration: {r.reason}")
        return Report(True)


def factorize(f: ComoduleMap) -> Factorization:
    """Factor ``f: X -> Y`` as a cofibration and quasi-isomorphism followed by a tower.

    Stages ``G_0, ..., G_{N-1}`` are built for the window ``N``; the limit is exact
    through degree ``N - 2``.
    """
    x, y = f.source, f.target
    c = x.coalgebra
    if not c.simply_connected:
        raise ValueError("factorization needs a simply connected coalgebra")
    N = x.maxdeg
    if N < 3:
        raise ValueError("window too small to factor")
    u = cofree(x.carrier, c, "UXxC")
    W, incs, projs = comodule_direct_sum(u, y)
    rho = ComoduleMap(x, u, ChainMap(x.carrier, u.carrier, x.coaction.mats))
    j = ComoduleMap(x, W, (incs[0].map @ rho.map) + (incs[1].map @ f.map))
    p = projs[1]
    stages, incl, conn, wits, V = [], [], [], [], []
    st = degree_zero_step(j)
    stages.append(st.obj)
    incl.append(st.inclusion)
    conn.append(st.projection)
    wits.append(st.witness)
    V.append(st.v)
    for n in range(1, N):
        st = factor_step(incl[-1], n)
        stages.append(st.obj)
        incl.append(st.inclusion)
        conn.append(st.projection)
        wits.append(st.witness)
        V.append(st.v)
    w = N - 2
    top = stages[-1]
    lim = restrict_comodule(top, w)
    xr = restrict_comodule(x, w, coalgebra=lim.coalgebra)
    yr = restrict_comodule(y, w, coalgebra=lim.coalgebra)
    jt = restrict_map(incl[-1], xr, lim)
    q = p
    for h in conn:
        q = q @ h
    q = restrict_map(q, lim, yr)
    fr = restrict_map(f, xr, yr)
    return Factorization(fr, W, j, p, tuple(stages), tuple(incl), tuple(conn), tuple(wits),
                         tuple(V), _named(lim, "W~"), jt, q, w)
