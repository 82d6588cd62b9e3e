"""Spectral sequence of the cobar bicomplex filtered by cobar degree.

Cells are indexed ``(q, p)``: cobar degree ``q`` and chain degree ``p``; the
total degree is ``t = p - q`` and the total differential lowers it by one.
The filtration ``F^s = ⊕_{q >= s}`` gives ``d_r : (q, p) -> (q + r, p + r - 1)``.
``E^1`` is the internal homology of the rows, ``E^2`` is ``CoTor`` over
``H_*(C)`` of the homology comodules, and the sequence converges to the
homology of the (truncated) total complex.

Pages are computed from explicit bases of ``Z_r`` and ``B_r`` inside the
total complex, so every page is exact, including the window edges; only the
comparison with untruncated objects needs the safe window.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property

from .chain_complex import (
    ChainMap,
    Report,
    homology_dims,
    homology_retract,
    tensor,
    tensor_maps,
)
from .coalgebra import DGCoalgebra, homology_coalgebra
from .comodule import DGComodule
from .cotensor import CobarBicomplex, GradedDims, cobar_bicomplex, cotensor, cotor_cobar
from .field_linalg import Matrix, column_basis, complement_basis, kernel_basis, rank, solve_many

__all__ = [
    "SpectralSequencePage",
    "SpectralSequence",
    "spectral_sequence",
    "total_homology",
    "e1_page",
    "e2_page",
    "run_to_einfty",
    "homology_comodule",
    "check_page",
    "e2_crosscheck",
    "convergence_check",
    "collapse_check",
]

FILTRATION = "cobar degree q (decreasing); d_r: (q, p) -> (q + r, p + r - 1)"


# ---------------------------------------------------------------------------
# total complex and homology


def total_homology(b: CobarBicomplex, through_degree: int | None = None) -> GradedDims:
    """Homology of the total complex in degrees ``0..through_degree``.

    The values agree with the untruncated cobar construction through
    ``b.safe_total_degree()``, which is recorded as ``exact_through``.
    """
    top = b.maxdeg if through_degree is None else through_degree
    dims = []
    for t in range(top + 1):
        n = sum(d for _, _, d in b.total_dims(t))
        dims.append(n - rank(b.total_differential(t)) - rank(b.total_differential(t + 1)))
    return GradedDims(tuple(dims), min(top, b.safe_total_degree()), "H(Tot)")


class _Filtered:
    """The total complex of ``b`` with its cobar-degree filtration."""

    def __init__(self, b: CobarBicomplex):
        self.b = b
        self.field = b.field
        self._D = {}
        self._cache = {}

    def offsets(self, t: int) -> list[tuple[int, int, int]]:
        """``(q, offset, size)`` for every row ``q`` in total degree ``t``."""
        out, off = [], 0
        for q in range(self.b.qmax + 1):
            p = t + q
            n = self.b.dim(q, p) if 0 <= p <= self.b.maxdeg else 0
            out.append((q, off, n))
            off += n
        return out

    def size(self, t: int) -> int:
        return sum(n for _, _, n in self.offsets(t))

    def D(self, t: int) -> Matrix:
        if t not in self._D:
            self._D[t] = self.b.total_differential(t)
        return self._D[t]

    def fil(self, t: int, s: int) -> list[int]:
        """Coordinates of ``F^s`` in total degree ``t``."""
        return [off + k for q, off, n in self.offsets(t) if q >= s for k in range(n)]

    def below(self, t: int, s: int) -> list[int]:
        """Coordinates outside ``F^s``."""
        return [off + k for q, off, n in self.offsets(t) if q < s for k in range(n)]

    def _embed(self, t: int, idx: list[int], m: Matrix) -> Matrix:
        a = self.field.zeros(self.size(t), m.cols).a.copy()
        for r, i in enumerate(idx):
            a[i, :] = m.a[r, :]
        return Matrix(self.field, a, shape=a.shape, _trusted=True)

    def Z(self, t: int, s: int, r: int) -> Matrix:
        """``{x in F^s : D x in F^{s+r}}`` in total degree ``t``."""
        key = ("Z", t, s, r)
        if key not in self._cache:
            cols = self.fil(t, s)
            rows = self.below(t - 1, s + r)
            D = self.D(t)
            sub = Matrix(self.field, D.a[rows][:, cols], shape=(len(rows), len(cols)), _trusted=True)
            self._cache[key] = self._embed(t, cols, kernel_basis(sub))
        return self._cache[key]

    def B(self, t: int, s: int, r: int) -> Matrix:
        """``F^s ∩ D(F^{s-r})`` in total degree ``t``."""
        key = ("B", t, s, r)
        if key not in self._cache:
            cols = self.fil(t + 1, s - r)
            rows = self.below(t, s)
            D = self.D(t + 1)
            sub = Matrix(self.field, D.a[rows][:, cols], shape=(len(rows), len(cols)), _trusted=True)
            pre = self._embed(t + 1, cols, kernel_basis(sub))
            self._cache[key] = column_basis(D @ pre)
        return self._cache[key]

    def cell(self, t: int, s: int, r: int) -> tuple[Matrix, Matrix]:
        """``(denominator basis, representatives)`` of ``E_r^s`` in total degree ``t``."""
        key = ("E", t, s, r)
        if key not in self._cache:
            z = self.Z(t, s, r)
            den = column_basis(Matrix.hstack(self.field, [self.Z(t, s + 1, r - 1), self.B(t, s, r - 1)],
                                             rows=self.size(t)))
            reps = complement_basis(den, z)
            self._cache[key] = (den, reps)
        return self._cache[key]

    def differential(self, t: int, s: int, r: int) -> Matrix:
        """Matrix of ``d_r : E_r^s(t) -> E_r^{s+r}(t-1)`` in the representative bases."""
        _, reps = self.cell(t, s, r)
        den2, reps2 = self.cell(t - 1, s + r, r)
        if reps.cols == 0 or reps2.cols == 0:
            return self.field.zeros(reps2.cols, reps.cols)
        image = self.D(t) @ reps
        basis = Matrix.hstack(self.field, [den2, reps2], rows=self.size(t - 1))
        coords = solve_many(basis, image)
        if coords is None:
            raise ArithmeticError("d_r image left the filtration piece")
        return Matrix(self.field, coords.a[den2.cols:, :], shape=(reps2.cols, reps.cols), _trusted=True)


# ---------------------------------------------------------------------------
# pages


@dataclass(frozen=True, eq=False)
class SpectralSequencePage:
    """Page ``E_r``: cell dims and the differentials ``d_r`` leaving each cell."""

    r: int
    dims: dict
    diffs: dict
    qmax: int
    maxdeg: int
    filtration: str = FILTRATION

    def dim(self, q: int, p: int) -> int:
        return self.dims.get((q, p), 0)

    def target(self, q: int, p: int) -> tuple[int, int]:
        return q + self.r, p + self.r - 1

    def total(self, t: int) -> int:
        return sum(self.dim(q, t + q) for q in range(self.qmax + 1))

    def total_dims(self, through: int | None = None) -> tuple[int, ...]:
        top = self.maxdeg if through is None else through
        return tuple(self.total(t) for t in range(top + 1))

    def nonzero(self) -> list[tuple[int, int, int]]:
        return [(q, p, d) for (q, p), d in sorted(self.dims.items()) if d]

    @property
    def is_zero(self) -> bool:
        return not any(self.dims.values())

    @property
    def differentials_vanish(self) -> bool:
        return all(m.is_zero() for m in self.diffs.values())

    def row(self, q: int) -> tuple[int, ...]:
        return tuple(self.dim(q, p) for p in range(self.maxdeg + 1))

    def table(self) -> list[tuple[int, ...]]:
        return [self.row(q) for q in range(self.qmax + 1)]


@dataclass(frozen=True, eq=False)
class SpectralSequence:
    """All pages of the cobar-degree filtration of one bicomplex."""

    bicomplex: CobarBicomplex
    engine: _Filtered = dc_field(repr=False)

    @property
    def last_page(self) -> int:
        # d_r leaves the rows 0..qmax once r > qmax
        return self.bicomplex.qmax + 1

    def page(self, r: int) -> SpectralSequencePage:
        if r < 1:
            raise ValueError("pages start at r = 1")
        b, eng = self.bicomplex, self.engine
        r_eff = min(r, self.last_page)
        dims, diffs = {}, {}
        for q in range(b.qmax + 1):
            for p in range(b.maxdeg + 1):
                t = p - q
                _, reps = eng.cell(t, q, r_eff)
                dims[(q, p)] = reps.cols
                if r == r_eff and reps.cols and q + r <= b.qmax and p + r - 1 <= b.maxdeg:
                    diffs[(q, p)] = eng.differential(t, q, r_eff)
        return SpectralSequencePage(r, dims, diffs, b.qmax, b.maxdeg)

    @cached_property
    def pages(self) -> tuple[SpectralSequencePage, ...]:
        return tuple(self.page(r) for r in range(1, self.last_page + 1))

    def collapse_page(self, start: int = 1) -> int:
        """Smallest ``r >= start`` from which on every differential vanishes."""
        r = self.last_page
        while r > start and self.pages[r - 2].differentials_vanish:
            r -= 1
        return r

    def einfty(self) -> SpectralSequencePage:
        return self.pages[-1]


def spectral_sequence(b: CobarBicomplex) -> SpectralSequence:
    return SpectralSequence(b, _Filtered(b))


def _page_for(x: DGComodule, y: DGComodule, qmax: int, r: int) -> SpectralSequencePage:
    ss = spectral_sequence(cobar_bicomplex(x, y, qmax))
    page = ss.page(r)
    object.__setattr__(page, "_ss", ss)
    return page


def e1_page(x: DGComodule, y: DGComodule, qmax: int) -> SpectralSequencePage:
    """``E^1_{q,p} = H_p(Ω̄^q(X, C, Y))``."""
    return _page_for(x, y, qmax, 1)


def e2_page(x: DGComodule, y: DGComodule, qmax: int) -> SpectralSequencePage:
    """``E^2_{q,p}``, isomorphic to ``CoTor^q_{H_*(C)}(H_*X, H_*Y)_p``.

    Exact against untruncated data for ``q < qmax`` and ``p < maxdeg``.
    """
    return _page_for(x, y, qmax, 2)


def run_to_einfty(page: SpectralSequencePage) -> SpectralSequencePage:
    """Turn pages until all later differentials vanish.

    The result is ``E^∞``; its ``r`` is the page index where the sequence
    collapses (``page.r`` itself when it already has).
    """
    ss = getattr(page, "_ss", None)
    if ss is None:
        raise ValueError("page was not produced by e1_page/e2_page")
    r = ss.collapse_page(page.r)
    out = ss.page(r)
    object.__setattr__(out, "_ss", ss)
    return out


def check_page(page: SpectralSequencePage, nxt: SpectralSequencePage) -> Report:
    """``d_r ∘ d_r = 0`` cellwise and ``E_{r+1}`` is the homology of ``E_r``."""
    for (q, p), m in page.diffs.items():
        tq, tp = page.target(q, p)
        m2 = page.diffs.get((tq, tp))
        if m2 is not None and not (m2 @ m).is_zero():
            return Report.fail(p - q, f"d_{page.r} squares to nonzero at {(q, p)}")
    for q in range(page.qmax + 1):
        for p in range(page.maxdeg + 1):
            out = page.diffs.get((q, p))
            sq, sp = q - page.r, p - page.r + 1
            inc = page.diffs.get((sq, sp))
            h = page.dim(q, p) - (rank(out) if out is not None else 0) - (rank(inc) if inc is not None else 0)
            if h != nxt.dim(q, p):
                return Report.fail(p - q, f"E_{page.r + 1}{(q, p)} has dim {nxt.dim(q, p)}, homology is {h}")
    return Report(True)


# ---------------------------------------------------------------------------
# homology comodules and cross-checks


def homology_comodule(x: DGComodule, hc: DGCoalgebra | None = None) -> DGComodule:
    """``H_*(X)`` as a comodule over ``H_*(C)`` through splittings of ``X`` and ``C``."""
    c = x.coalgebra
    hc = hc if hc is not None else homology_coalgebra(c)
    N = x.maxdeg
    H, inc, proj = homology_retract(x.carrier)
    _, _, pc = homology_retract(c.carrier)
    rho = tensor_maps(proj, pc, source=x.xc, target=tensor(H, hc.carrier, N)) @ x.coaction @ inc
    left = None
    if x.has_left:
        left = tensor_maps(pc, proj, source=x.left.target, target=tensor(hc.carrier, H, N)) @ x.left @ inc
    name = f"H({x.name})" if x.name else ""
    return DGComodule(hc, H, ChainMap(H, rho.target, rho.mats),
                      ChainMap(H, left.target, left.mats) if left is not None else None, name)


def e2_crosscheck(x: DGComodule, y: DGComodule, qmax: int, page: SpectralSequencePage | None = None) -> Report:
    """Compare ``E^2`` with ``CoTor`` over ``H_*(C)`` computed from the homology comodules."""
    page = page if page is not None else e2_page(x, y, qmax)
    hc = homology_coalgebra(x.coalgebra)
    hx, hy = homology_comodule(x, hc), homology_comodule(y, hc)
    hb = cobar_bicomplex(hx, hy, qmax)
    for q in range(qmax):
        ref = cotor_cobar(hx, hy, q, hb).dims
        for p in range(x.maxdeg):
            if page.dim(q, p) != ref[p]:
                return Report.fail(p - q, f"E2{(q, p)} = {page.dim(q, p)} but CoTor over H(C) is {ref[p]}",
                                   cell=(q, p))
    return Report(True, flags={"rows": qmax, "columns": x.maxdeg})


def convergence_check(b: CobarBicomplex, ss: SpectralSequence | None = None) -> Report:
    """Antidiagonal sums of ``E^∞`` equal the total homology in every degree."""
    ss = ss if ss is not None else spectral_sequence(b)
    th = total_homology(b)
    einf = ss.einfty()
    for t, d in enumerate(th.dims):
        if einf.total(t) != d:
            return Report.fail(t, f"E_inf total {einf.total(t)} differs from H(Tot) {d}")
    return Report(True, flags={"total": th.dims, "collapse": ss.collapse_page()})


def collapse_check(x: DGComodule, y: DGComodule, qmax: int, b: CobarBicomplex | None = None) -> Report:
    """For fibrant ``X``: ``H(Tot)`` equals ``H_*(X □ Y)`` through the safe degree."""
    b = b if b is not None else cobar_bicomplex(x, y, qmax)
    th = total_homology(b)
    cot = cotensor(x, y).complex
    ref = homology_dims(cot)
    for t in range(th.exact_through + 1):
        if th.dims[t] != ref[t]:
            return Report.fail(t, f"H(Tot) = {th.dims[t]} but H(X□Y) = {ref[t]}")
    return Report(True, flags={"through": th.exact_through, "dims": th.dims[:th.exact_through + 1]})
