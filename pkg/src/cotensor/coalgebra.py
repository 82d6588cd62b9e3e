"""Differential graded coalgebras: validation, coaugmentation, unit coideal, homology."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .chain_complex import (
    ChainComplex,
    ChainMap,
    Report,
    associator,
    identity_map,
    homology_retract,
    tensor,
    tensor_maps,
    twist,
    unit_complex,
    validate_chain_map,
    validate_complex,
)
from .field_linalg import Field, Matrix, kernel_basis, solve_many

__all__ = [
    "DGCoalgebra",
    "CoalgebraMap",
    "Coideal",
    "validate_coalgebra",
    "validate_coalgebra_map",
    "unit_coideal",
    "homology_coalgebra",
    "trivial_coalgebra",
]


@dataclass(frozen=True, eq=False)
class DGCoalgebra:
    """Carrier ``C`` with ``Δ: C -> C⊗C`` and ``ε: C -> k``.

    ``coaug`` may be given explicitly; for a simply connected coalgebra it is
    built from the inverse of ``ε_0``.
    """

    carrier: ChainComplex
    comult: ChainMap
    counit: ChainMap
    name: str = ""
    coaug_given: ChainMap | None = None

    @staticmethod
    def build(carrier: ChainComplex, comult, counit, name: str = "",
              coaug: ChainMap | None = None) -> "DGCoalgebra":
        N = carrier.maxdeg
        cc = tensor(carrier, carrier, N)
        k = unit_complex(carrier.field, N)
        if not isinstance(comult, ChainMap):
            comult = ChainMap.build(carrier, cc, comult)
        if not isinstance(counit, ChainMap):
            counit = ChainMap.build(carrier, k, counit)
        return DGCoalgebra(carrier, comult, counit, name, coaug)

    @property
    def field(self) -> Field:
        return self.carrier.field

    @property
    def maxdeg(self) -> int:
        return self.carrier.maxdeg

    @cached_property
    def unit(self) -> ChainComplex:
        return unit_complex(self.field, self.maxdeg)

    @cached_property
    def report(self) -> Report:
        return validate_coalgebra(self)

    @property
    def flags(self) -> dict:
        return self.report.flags

    @property
    def simply_connected(self) -> bool:
        return self.flags["simply_connected"]

    @property
    def cocommutative(self) -> bool:
        return self.flags["cocommutative"]

    @cached_property
    def coaug(self) -> ChainMap | None:
        """``η: k -> C``, or ``None`` when no coaugmentation is known."""
        if self.coaug_given is not None:
            return self.coaug_given
        c = self.carrier
        if c.dim(0) != 1 or c.dim(1) != 0 or self.counit[0].is_zero():
            return None
        f = self.field
        eta0 = Matrix(f, [[f.inv(self.counit[0].a[0, 0])]])
        return ChainMap.build(self.unit, c, {0: eta0})

    @cached_property
    def coideal(self) -> "Coideal":
        return unit_coideal(self)

    def with_maxdeg(self, maxdeg: int) -> "DGCoalgebra":
        c = self.carrier.with_maxdeg(maxdeg)
        comult = list(self.comult.mats[:maxdeg + 1])
        counit = list(self.counit.mats[:maxdeg + 1])
        out = DGCoalgebra.build(c, comult + [None] * (maxdeg + 1 - len(comult)),
                                counit + [None] * (maxdeg + 1 - len(counit)), self.name)
        return out

    def __repr__(self):
        return f"DGCoalgebra({self.name or '?'}, {self.field}, dims={list(self.carrier.dims)})"


def validate_coalgebra(c: DGCoalgebra) -> Report:
    """Checks the axioms and records all flags, even after a failure."""
    C, N = c.carrier, c.maxdeg
    flags = dict(chain_map=False, coassociative=False, counital=False,
                 cocommutative=False, simply_connected=False)
    first = None

    def note(deg, msg):
        nonlocal first
        if first is None:
            first = (deg, msg)

    r = validate_complex(C)
    if not r:
        return Report.fail(r.degree, "carrier: " + r.message, **flags)
    cc = tensor(C, C, N)
    if c.comult.target.dims != cc.dims or c.comult.source.dims != C.dims:
        return Report.fail(None, "comultiplication has the wrong shape", **flags)
    r = validate_chain_map(ChainMap(C, cc, c.comult.mats))
    flags["chain_map"] = r.ok
    if not r:
        note(r.degree, "comultiplication is not a chain map")

    idc = identity_map(C)
    d = c.comult
    left = tensor_maps(d, idc, source=cc, target=tensor(cc, C, N)) @ d
    right = tensor_maps(idc, d, source=cc, target=tensor(C, cc, N)) @ d
    left = associator(C, C, C, N, source=left.target, target=right.target) @ left
    bad = [n for n in range(N + 1) if left[n] != right[n]]
    flags["coassociative"] = not bad
    if bad:
        note(bad[0], "comultiplication is not coassociative")

    eps = c.counit
    k = c.unit
    ck = tensor(C, k, N)
    kc = tensor(k, C, N)
    r1 = tensor_maps(idc, eps, source=cc, target=ck) @ d
    l1 = tensor_maps(eps, idc, source=cc, target=kc) @ d
    bad = [n for n in range(N + 1)
           if r1[n] != idc[n] or l1[n] != idc[n] or (n > 0 and not eps[n].is_zero())]
    flags["counital"] = not bad
    if bad:
        note(bad[0], "counit identities fail")

    tw = twist(C, C, N, source=cc, target=cc) @ d
    flags["cocommutative"] = all(tw[n] == d[n] for n in range(N + 1))
    flags["simply_connected"] = C.dim(0) == 1 and C.dim(1) == 0
    ok = flags["chain_map"] and flags["coassociative"] and flags["counital"]
    if ok:
        return Report(True, None, "", flags)
    return Report(False, first[0], first[1], flags)


@dataclass(frozen=True, eq=False)
class Coideal:
    """``C̄ = ker ε`` with ``ι: C̄ -> C``, ``π: C -> C̄`` and ``Δ̄ = (π⊗π)Δι``.

    ``π ι = id`` and ``ι π = id - η ε``.
    """

    complex: ChainComplex
    inclusion: ChainMap
    projection: ChainMap
    reduced_comult: ChainMap


def unit_coideal(c: DGCoalgebra) -> Coideal:
    eta = c.coaug
    if eta is None:
        raise ValueError("coalgebra is not coaugmented")
    C, N, f = c.carrier, c.maxdeg, c.field
    eps = c.counit
    incs, projs = [], []
    for n in range(N + 1):
        if n == 0:
            inc = kernel_basis(eps[0])
            proj_full = f.identity(C.dim(0)) - eta[0] @ eps[0]
            proj = solve_many(inc, proj_full)
            assert proj is not None
        else:
            inc = proj = f.identity(C.dim(n))
        incs.append(inc)
        projs.append(proj)
    dims = [m.cols for m in incs]
    diffs = {n: projs[n - 1] @ C.d(n) @ incs[n] for n in range(1, N + 1)}
    bar = ChainComplex.build(f, dims, diffs, N)
    iota = ChainMap(bar, C, tuple(incs))
    pi = ChainMap(C, bar, tuple(projs))
    bb = tensor(bar, bar, N)
    red = tensor_maps(pi, pi, source=c.comult.target, target=bb) @ c.comult @ iota
    return Coideal(bar, iota, pi, red)


def homology_coalgebra(c: DGCoalgebra) -> DGCoalgebra:
    """Coalgebra structure on ``H_*(C)`` (zero differential) through a splitting.

    Degree ``maxdeg`` is subject to the usual truncation caveat.
    """
    H, inc, proj = homology_retract(c.carrier)
    hh = tensor(H, H, c.maxdeg)
    comult = tensor_maps(proj, proj, source=c.comult.target, target=hh) @ c.comult @ inc
    counit = c.counit @ inc
    return DGCoalgebra(H, comult, counit, f"H({c.name})" if c.name else "")


def trivial_coalgebra(field: Field, maxdeg: int = 0, name: str = "k") -> DGCoalgebra:
    """The ground field as a coalgebra."""
    k = unit_complex(field, maxdeg)
    one = field.identity(1)
    return DGCoalgebra.build(k, {0: one}, {0: one}, name)


@dataclass(frozen=True, eq=False)
class CoalgebraMap:
    source: DGCoalgebra
    target: DGCoalgebra
    map: ChainMap


def validate_coalgebra_map(g: CoalgebraMap) -> Report:
    C, D, f = g.source, g.target, g.map
    r = validate_chain_map(f)
    if not r:
        return r
    N = C.maxdeg
    lhs = D.comult @ f
    rhs = tensor_maps(f, f, source=C.comult.target, target=D.comult.target) @ C.comult
    for n in range(N + 1):
        if lhs[n] != rhs[n]:
            return Report.fail(n, "map does not commute with comultiplication")
        if (D.counit @ f)[n] != C.counit[n]:
            return Report.fail(n, "map does not commute with counit")
    return Report(True)
