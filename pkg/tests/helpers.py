"""Random objects and independent oracles shared by the test modules."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from cotensor.chain_complex import ChainComplex, ChainMap, homology_dims
from cotensor.comodule import (
    ComoduleMap,
    DGComodule,
    cofree,
    comodule_direct_sum,
    hom_comodule,
    hom_differential,
    kernel_cokernel,
    trivial_comodule,
)
from cotensor.field_linalg import Field, Matrix, kernel_basis, rank, solve_many


def rng_for(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_entries(field: Field, rng, rows: int, cols: int, density: float = 0.6):
    p = field.characteristic
    if p:
        vals = rng.integers(0, p, size=(rows, cols))
    else:
        vals = rng.integers(-2, 3, size=(rows, cols))
    mask = rng.random((rows, cols)) < density
    vals = np.where(mask, vals, 0)
    return [[int(v) for v in row] for row in vals]


def random_matrix(field: Field, rng, rows: int, cols: int, density: float = 0.6) -> Matrix:
    return Matrix(field, random_entries(field, rng, rows, cols, density), shape=(rows, cols))


def random_invertible(field: Field, rng, n: int) -> Matrix:
    while True:
        m = random_matrix(field, rng, n, n, 0.8)
        if rank(m) == n:
            return m


def inverse(m: Matrix) -> Matrix:
    out = solve_many(m, m.field.identity(m.rows))
    assert out is not None
    return out


def random_complex(field: Field, rng, maxdeg: int, maxdim: int = 3, top: int | None = None) -> ChainComplex:
    """A random complex, built as a sum of spheres and disks then conjugated by random automorphisms."""
    top = maxdeg if top is None else min(top, maxdeg)
    V = [0] * (maxdeg + 2)
    W = [0] * (maxdeg + 2)
    for n in range(top + 1):
        V[n] = int(rng.integers(0, 2))
        if n >= 1:
            W[n] = int(rng.integers(0, 2))
    dims = [V[n] + W[n] + W[n + 1] for n in range(maxdeg + 1)]
    while any(d > maxdim for d in dims):
        n = int(np.argmax(dims))
        if V[n]:
            V[n] -= 1
        elif W[n + 1]:
            W[n + 1] = 0
        else:
            W[n] = 0
        dims = [V[n] + W[n] + W[n + 1] for n in range(maxdeg + 1)]
    # model basis in degree n: [V_n | bottom of D^{n+1} (W_{n+1}) | top of D^n (W_n)]
    model = {}
    for n in range(1, maxdeg + 1):
        a = np.zeros((dims[n - 1], dims[n]), dtype=object)
        for k in range(W[n]):
            a[V[n - 1] + k, V[n] + W[n + 1] + k] = 1
        model[n] = Matrix(field, a, shape=a.shape)
    P = [random_invertible(field, rng, d) if d else field.identity(0) for d in dims]
    diffs = {n: P[n - 1] @ model[n] @ inverse(P[n]) for n in range(1, maxdeg + 1)}
    return ChainComplex.build(field, dims, diffs, maxdeg)


def random_chain_map(x: ChainComplex, y: ChainComplex, rng) -> ChainMap:
    """A uniformly chosen chain map: random point of the solution space of ``d f = f d``."""
    field = x.field
    N = x.maxdeg
    offs, total = [], 0
    for n in range(N + 1):
        offs.append(total)
        total += y.dim(n) * x.dim(n)
    if total == 0:
        return ChainMap.build(x, y, {})
    rows = []
    for n in range(1, N + 1):
        # d_Y f_n - f_{n-1} d_X : X_n -> Y_{n-1}
        r, c = y.dim(n - 1), x.dim(n)
        if r * c == 0:
            continue
        dY, dX = y.d(n).a, x.d(n).a
        for a in range(r):
            for b in range(c):
                row = np.zeros(total, dtype=object)
                for k in range(y.dim(n)):
                    row[offs[n] + k * x.dim(n) + b] += dY[a, k]
                for k in range(x.dim(n - 1)):
                    row[offs[n - 1] + a * x.dim(n - 1) + k] -= dX[k, b]
                rows.append(row)
    if rows:
        K = kernel_basis(Matrix(field, np.array(rows, dtype=object), shape=(len(rows), total)))
    else:
        K = field.identity(total)
    coef = random_matrix(field, rng, K.cols, 1, 0.9)
    v = (K @ coef).a[:, 0]
    mats = {}
    for n in range(N + 1):
        r, c = y.dim(n), x.dim(n)
        mats[n] = Matrix(field, np.array(v[offs[n]:offs[n] + r * c], dtype=object).reshape(r, c), shape=(r, c))
    return ChainMap.build(x, y, mats)


def random_comodule_map(x: DGComodule, y: DGComodule, rng) -> ComoduleMap:
    """Random degree-0 comodule chain map: a random cycle of ``Hom_C(X, Y)_0``."""
    field = x.field
    H = hom_comodule(x, y, 0)
    if H.dim == 0:
        return ComoduleMap(x, y, ChainMap.build(x.carrier, y.carrier, {}))
    D = hom_differential(x, y, 0, H)
    K = kernel_basis(D) if D.rows else field.identity(H.dim)
    coef = random_matrix(field, rng, K.cols, 1, 0.9)
    vec = H.basis @ (K @ coef)
    mats = H.unpack(vec)
    return ComoduleMap(x, y, ChainMap.build(x.carrier, y.carrier, mats))


def random_comodule(c, rng, maxdim: int = 2, kind: str | None = None) -> DGComodule:
    """Cofree, trivial, sums of those, and kernels/cokernels of random maps between them."""
    field, N = c.field, c.maxdeg
    kinds = ("cofree", "trivial", "sum", "cokernel", "kernel")
    kind = kind or kinds[int(rng.integers(0, len(kinds)))]
    small = lambda: random_complex(field, rng, N, maxdim, top=max(1, N // 2))
    if kind == "cofree":
        return cofree(small(), c, "cofree")
    if kind == "trivial":
        return trivial_comodule(random_complex(field, rng, N, maxdim), c, "trivial")
    if kind == "sum":
        a = random_comodule(c, rng, maxdim, "cofree")
        b = random_comodule(c, rng, maxdim, "trivial")
        return comodule_direct_sum(a, b)[0]
    a = random_comodule(c, rng, maxdim, "trivial" if kind == "cokernel" else "cofree")
    b = random_comodule(c, rng, maxdim, "cofree")
    f = random_comodule_map(a, b, rng) if kind == "cokernel" else random_comodule_map(b, a, rng)
    (ker, _), (cok, _) = kernel_cokernel(f)
    return cok if kind == "cokernel" else ker


# ---------------------------------------------------------------------------
# oracles


def brute_rank(field: Field, rows) -> int:
    """``log_p`` of the size of the row span, by enumerating all combinations."""
    p = field.characteristic
    rows = [tuple(int(v) % p for v in r) for r in rows]
    if not rows:
        return 0
    span = set()
    for coefs in itertools.product(range(p), repeat=len(rows)):
        v = tuple(sum(c * r[k] for c, r in zip(coefs, rows)) % p for k in range(len(rows[0])))
        span.add(v)
    n, size = 0, 1
    while size < len(span):
        size *= p
        n += 1
    return n


def oracle_rank(field: Field, rows) -> int:
    """Plain-Python elimination (Fractions over Q, integers mod p), independent of the library."""
    p = field.characteristic
    if p:
        m = [[int(v) % p for v in r] for r in rows]
        inv = lambda a: pow(a, p - 2, p)
    else:
        m = [[Fraction(v) for v in r] for r in rows]
        inv = lambda a: 1 / a
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][c])
        m[r] = [(a * s) % p if p else a * s for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [((a - f * b) % p) if p else a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def kunneth(hx, hy, upto: int) -> list[int]:
    return [sum(hx[i] * hy[n - i] for i in range(n + 1) if i < len(hx) and n - i < len(hy))
            for n in range(upto + 1)]


def homology_via_ranks(x: ChainComplex, upto: int) -> list[int]:
    """``dim X_n - rank d_n - rank d_{n+1}`` with ranks from the independent oracle."""
    rk = lambda m: oracle_rank(x.field, m.tolist()) if m.rows and m.cols else 0
    return [x.dim(n) - rk(x.d(n)) - rk(x.d(n + 1)) for n in range(upto + 1)]


def dims_of(x) -> list[int]:
    return list(x.dims)


def carrier_homology(x: DGComodule) -> list[int]:
    return homology_dims(x.carrier)

