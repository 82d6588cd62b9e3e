"""Small coalgebras and comodules used throughout the tests and the CLI.

F1  the ground field k
F2  H_*(S^2): 1 in degree 0, a primitive x in degree 2
F3  F2 plus an acyclic primitive summand a (degree 2), b (degree 3), db = a
F4  H_*(CP^2): 1, x2, x4 with Δ(x4) = x4⊗1 + x2⊗x2 + 1⊗x4
T2  tensor coalgebra on two degree-2 letters u, v, words of length <= 2,
    deconcatenation coproduct (not cocommutative)
"""

from __future__ import annotations

import numpy as np

from .chain_complex import ChainComplex, ChainMap, disk, sphere, tensor, tensor_blocks
from .coalgebra import CoalgebraMap, DGCoalgebra
from .comodule import DGComodule, coalgebra_comodule, cofree, trivial_comodule, zero_comodule
from .field_linalg import Field, Matrix

__all__ = [
    "coalgebra_from_terms",
    "fixture_coalgebra",
    "fixture_comodules",
    "f3_to_f2",
    "COALGEBRA_NAMES",
]

COALGEBRA_NAMES = ("F1", "F2", "F3", "F4", "T2")


def coalgebra_from_terms(field: Field, dims, diffs, terms, maxdeg: int, name: str = "") -> DGCoalgebra:
    """Build a coalgebra from ``terms[(deg, idx)] = [(coef, (da, ia), (db, ib)), ...]``.

    Basis element ``(0, 0)`` is the counit-one element; ``ε`` sends it to 1.
    """
    C = ChainComplex.build(field, dims, diffs, maxdeg)
    cc = tensor(C, C, maxdeg)
    mats = []
    for n in range(maxdeg + 1):
        m = np.zeros((cc.dim(n), C.dim(n)), dtype=object)
        offs = {i: off for i, off, _ in tensor_blocks(C.dims, C.dims, n)}
        for k in range(C.dim(n)):
            for coef, (da, ia), (db, ib) in terms.get((n, k), []):
                if da + db != n:
                    raise ValueError(f"term for {(n, k)} has the wrong degree")
                m[offs[da] + ia * C.dim(db) + ib, k] += coef
        mats.append(Matrix(field, m, shape=m.shape))
    counit = {0: Matrix(field, [[1] + [0] * (C.dim(0) - 1)], shape=(1, C.dim(0)))} if C.dim(0) else {}
    return DGCoalgebra.build(C, mats, counit, name)


def _prim(n, k):
    return [(1, (n, k), (0, 0)), (1, (0, 0), (n, k))]


def fixture_coalgebra(name: str, field: Field, maxdeg: int = 10) -> DGCoalgebra:
    one = {(0, 0): [(1, (0, 0), (0, 0))]}
    if name == "F1":
        return coalgebra_from_terms(field, [1], {}, one, maxdeg, "F1")
    if name == "F2":
        terms = dict(one)
        terms[(2, 0)] = _prim(2, 0)
        return coalgebra_from_terms(field, [1, 0, 1], {}, terms, maxdeg, "F2")
    if name == "F3":
        terms = dict(one)
        terms[(2, 0)] = _prim(2, 0)   # x
        terms[(2, 1)] = _prim(2, 1)   # a
        terms[(3, 0)] = _prim(3, 0)   # b, db = a
        d3 = [[0], [1]]
        return coalgebra_from_terms(field, [1, 0, 2, 1], {3: d3}, terms, maxdeg, "F3")
    if name == "F4":
        terms = dict(one)
        terms[(2, 0)] = _prim(2, 0)
        terms[(4, 0)] = _prim(4, 0) + [(1, (2, 0), (2, 0))]
        return coalgebra_from_terms(field, [1, 0, 1, 0, 1], {}, terms, maxdeg, "F4")
    if name == "T2":
        # degree 2: u, v; degree 4: uu, uv, vu, vv (index 2a + b)
        terms = dict(one)
        terms[(2, 0)] = _prim(2, 0)
        terms[(2, 1)] = _prim(2, 1)
        for a in range(2):
            for b in range(2):
                w = 2 * a + b
                terms[(4, w)] = _prim(4, w) + [(1, (2, a), (2, b))]
        return coalgebra_from_terms(field, [1, 0, 2, 0, 4], {}, terms, maxdeg, "T2")
    raise KeyError(f"unknown coalgebra fixture {name!r}")


def f3_to_f2(field: Field, maxdeg: int = 10) -> CoalgebraMap:
    """The quasi-isomorphism F3 -> F2 sending x to x and the acyclic summand to zero."""
    c3 = fixture_coalgebra("F3", field, maxdeg)
    c2 = fixture_coalgebra("F2", field, maxdeg)
    mats = {0: [[1]], 2: [[1, 0]]}
    return CoalgebraMap(c3, c2, ChainMap.build(c3.carrier, c2.carrier, mats))


def fixture_comodules(c: DGCoalgebra) -> dict[str, DGComodule]:
    """Named comodules over ``c``; every one of them validates."""
    f, N = c.field, c.maxdeg
    out = {
        "zero": zero_comodule(c),
        "triv-S0": trivial_comodule(sphere(f, 0, 1, N), c, "triv-S0"),
        "triv-S2": trivial_comodule(sphere(f, 2, 1, N), c, "triv-S2"),
        "triv-D2": trivial_comodule(disk(f, 2, 1, N), c, "triv-D2"),
        "C": coalgebra_comodule(c, "C"),
        "cofree-S1": cofree(sphere(f, 1, 1, N), c, "cofree-S1"),
        "cofree-D2": cofree(disk(f, 2, 1, N), c, "cofree-D2"),
        "cofree-S0+S3": cofree(ChainComplex.build(f, [1, 0, 0, 1], {}, N), c, "cofree-S0+S3"),
    }
    return out
