"""JSON text format for complexes, coalgebras, comodules and their maps.

Every file is one JSON object with a ``"kind"`` key:

* ``complex``: ``field``, ``dims``, ``diff`` (``{"n": d_n}``)
* ``coalgebra``: a complex plus ``comult`` (``{"n": Δ_n}`` into the standard
  tensor basis) and ``counit`` (a row over degree 0)
* ``comodule``: a complex plus ``coalgebra`` (a path relative to the file, or
  a fixture name) and ``coaction``; optionally ``left``
* ``coalgebra-map`` / ``comodule-map``: ``source``, ``target`` references and ``map``

Matrices are lists of rows.  Entries are integers (reduced mod p on load) or
strings ``"a/b"`` over ℚ.  Zero and empty matrices may be omitted.  Optional
keys: ``name``, ``comment``.  ``field`` is 0 for ℚ.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path

from .chain_complex import ChainComplex, ChainMap, tensor
from .coalgebra import CoalgebraMap, DGCoalgebra
from .comodule import ComoduleMap, DGComodule
from .field_linalg import Field, Matrix

__all__ = [
    "ParseError",
    "Reader",
    "FIXTURE_DIR",
    "fixture_roots",
    "resolve_path",
    "load",
    "loads",
    "dumps",
    "dump_complex",
    "dump_coalgebra",
    "dump_comodule",
    "dump_map",
]

FIXTURE_DIR = Path(__file__).resolve().parent / "fixtures"
KINDS = ("complex", "coalgebra", "comodule", "coalgebra-map", "comodule-map")
_KEY_ORDER = ("kind", "name", "comment", "field", "coalgebra", "source", "target",
              "dims", "diff", "comult", "counit", "coaction", "left", "map")


class ParseError(ValueError):
    """Malformed input; ``where`` names the file and key (or line) at fault."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


def fixture_roots() -> list[Path]:
    roots = []
    env = os.environ.get("COTENSOR_FIXTURES")
    if env:
        roots.extend(Path(p) for p in env.split(os.pathsep) if p)
    roots.append(FIXTURE_DIR)
    return roots


def resolve_path(ref: str, base: Path | None = None) -> Path:
    """Find ``ref`` as given, next to ``base``, or under a fixture root.

    Fixture roots also accept ``fixtures/<file>`` and bare names without suffix.
    """
    cands = [Path(ref)]
    if base is not None:
        cands.append(base / ref)
    name = Path(ref).name
    for root in fixture_roots():
        cands.append(root / ref)
        cands.append(root / name)
        for suffix in (".coalg", ".cm", ".cx", ".map", ".cmap"):
            cands.append(root / (name.lower() + suffix))
    for c in cands:
        if c.is_file():
            return c
    raise ParseError(ref, "file not found (searched the working directory and fixture roots)")


# ---------------------------------------------------------------------------
# loading


class Reader:
    """Loads files into objects; referenced files are parsed once per reader."""

    def __init__(self, field: Field | None, maxdeg: int):
        self.field = field
        self.maxdeg = maxdeg
        self.cache = {}

    def load(self, path: Path):
        path = Path(path).resolve()
        if path in self.cache:
            return self.cache[path]
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise ParseError(str(path), f"cannot read: {e.strerror}") from None
        obj = self.parse(text, str(path), path.parent)
        self.cache[path] = obj
        return obj

    def parse(self, text: str, where: str, base: Path | None):
        try:
            d = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(f"{where}:{e.lineno}:{e.colno}", e.msg) from None
        if not isinstance(d, dict):
            raise ParseError(where, "top level must be an object")
        kind = d.get("kind")
        if kind not in KINDS:
            raise ParseError(f"{where}: kind", f"expected one of {', '.join(KINDS)}, got {kind!r}")
        return getattr(self, "_" + kind.replace("-", "_"))(d, where, base)

    def _field(self, d, where) -> Field:
        if self.field is not None:
            return self.field
        p = d.get("field")
        if not isinstance(p, int):
            raise ParseError(f"{where}: field", "expected an integer characteristic (0 for Q)")
        try:
            return Field(p)
        except ValueError as e:
            raise ParseError(f"{where}: field", str(e)) from None

    def _entry(self, field: Field, v, where):
        if isinstance(v, bool) or not isinstance(v, (int, str)):
            raise ParseError(where, f"matrix entry {v!r} is not an integer or 'a/b' string")
        if isinstance(v, str):
            try:
                v = Fraction(v)
            except (ValueError, ZeroDivisionError):
                raise ParseError(where, f"cannot read {v!r} as a rational") from None
        try:
            return field.scalar(v)
        except (ValueError, ZeroDivisionError) as e:
            raise ParseError(where, str(e)) from None

    def _matrix(self, field: Field, m, shape, where) -> Matrix:
        rows, cols = shape
        if not isinstance(m, list) or any(not isinstance(r, list) for r in m):
            raise ParseError(where, "matrix must be a list of rows")
        if rows == 0 or cols == 0:
            if any(len(r) for r in m) or (m and rows == 0):
                raise ParseError(where, f"expected an empty {rows}x{cols} matrix")
            return field.zeros(rows, cols)
        if len(m) != rows or any(len(r) != cols for r in m):
            got = (len(m), len(m[0]) if m else 0)
            raise ParseError(where, f"expected shape {shape}, got {got}")
        vals = [[self._entry(field, v, where) for v in r] for r in m]
        return Matrix(field, vals, shape=shape)

    def _degree_map(self, field, d, key, where, shape_of):
        raw = d.get(key, {})
        if not isinstance(raw, dict):
            raise ParseError(f"{where}: {key}", "expected an object keyed by degree")
        out = {}
        for k, m in raw.items():
            try:
                n = int(k)
            except ValueError:
                raise ParseError(f"{where}: {key}.{k}", "degree keys must be integers") from None
            if n < 0:
                raise ParseError(f"{where}: {key}.{k}", "negative degree")
            if n > self.maxdeg:
                flat = [self._entry(field, v, f"{where}: {key}.{k}") for r in m for v in r]
                if any(flat):
                    raise ParseError(f"{where}: {key}.{k}", f"nonzero entries above the window {self.maxdeg}")
                continue
            out[n] = self._matrix(field, m, shape_of(n), f"{where}: {key}.{k}")
        return out

    def _complex_part(self, d, where) -> ChainComplex:
        field = self._field(d, where)
        dims = d.get("dims")
        if not isinstance(dims, list) or any(isinstance(x, bool) or not isinstance(x, int) or x < 0 for x in dims):
            raise ParseError(f"{where}: dims", "expected a list of non-negative integers")
        if any(dims[self.maxdeg + 1:]):
            raise ParseError(f"{where}: dims", f"nonzero dimensions above the window {self.maxdeg}")
        dims = (dims + [0] * (self.maxdeg + 1))[:self.maxdeg + 1]
        diffs = self._degree_map(field, d, "diff", where,
                                 lambda n: (dims[n - 1] if n >= 1 else 0, dims[n]))
        if 0 in diffs and not diffs[0].is_zero():
            raise ParseError(f"{where}: diff.0", "there is no differential out of degree 0")
        diffs.pop(0, None)
        return ChainComplex.build(field, dims, diffs, self.maxdeg)

    def _complex(self, d, where, base):
        return self._complex_part(d, where)

    def _coalgebra(self, d, where, base):
        C = self._complex_part(d, where)
        cc = tensor(C, C, self.maxdeg)
        comult = self._degree_map(C.field, d, "comult", where, lambda n: (cc.dim(n), C.dim(n)))
        cu = d.get("counit", [])
        if not isinstance(cu, list):
            raise ParseError(f"{where}: counit", "expected a row over degree 0")
        if len(cu) != C.dim(0):
            raise ParseError(f"{where}: counit", f"expected {C.dim(0)} entries, got {len(cu)}")
        counit = {0: self._matrix(C.field, [cu], (1, C.dim(0)), f"{where}: counit")} if cu else {}
        return DGCoalgebra.build(C, comult, counit, d.get("name", ""))

    def _ref(self, d, key, where, base):
        ref = d.get(key)
        if not isinstance(ref, str):
            raise ParseError(f"{where}: {key}", "expected a path or fixture name")
        try:
            path = resolve_path(ref, base)
        except ParseError as e:
            raise ParseError(f"{where}: {key}", f"cannot resolve {ref!r}: {e.message}") from None
        return self.load(path)

    def _comodule(self, d, where, base):
        c = self._ref(d, "coalgebra", where, base)
        if not isinstance(c, DGCoalgebra):
            raise ParseError(f"{where}: coalgebra", "reference is not a coalgebra")
        X = self._complex_part(d, where)
        if X.field != c.field:
            raise ParseError(f"{where}: field", "comodule and coalgebra fields differ")
        xc = tensor(X, c.carrier, self.maxdeg)
        rho = self._degree_map(X.field, d, "coaction", where, lambda n: (xc.dim(n), X.dim(n)))
        left = None
        if "left" in d:
            cx = tensor(c.carrier, X, self.maxdeg)
            left = self._degree_map(X.field, d, "left", where, lambda n: (cx.dim(n), X.dim(n)))
        return DGComodule.build(c, X, rho, left, d.get("name", ""))

    def _map(self, d, where, base, cls):
        src = self._ref(d, "source", where, base)
        tgt = self._ref(d, "target", where, base)
        S = src.carrier
        T = tgt.carrier
        mats = self._degree_map(S.field, d, "map", where, lambda n: (T.dim(n), S.dim(n)))
        f = ChainMap.build(S, T, mats)
        return cls(src, tgt, f)

    def _coalgebra_map(self, d, where, base):
        return self._map(d, where, base, CoalgebraMap)

    def _comodule_map(self, d, where, base):
        return self._map(d, where, base, ComoduleMap)


def load(path, field: Field | None = None, maxdeg: int = 10):
    """Parse a file; ``field`` overrides the file's characteristic."""
    return Reader(field, maxdeg).load(Path(path))


def loads(text: str, field: Field | None = None, maxdeg: int = 10, base: Path | None = None):
    return Reader(field, maxdeg).parse(text, "<string>", base)


# ---------------------------------------------------------------------------
# canonical serialization


def _entry_out(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return int(v)


def _matrix_out(m: Matrix):
    return [[_entry_out(v) for v in row] for row in m.a.tolist()] if m.rows else []


def _degree_map_out(mats) -> dict:
    return {str(n): _matrix_out(m) for n, m in enumerate(mats) if m.rows and m.cols and not m.is_zero()}


def _dims_out(x: ChainComplex) -> list[int]:
    return list(x.dims[:x.top_degree() + 1])


def _render(d: dict) -> str:
    """Fixed key order; one matrix per line."""
    keys = [k for k in _KEY_ORDER if k in d]
    lines = []
    for k in keys:
        v = d[k]
        if isinstance(v, dict):
            if not v:
                body = "{}"
            else:
                inner = ",\n".join(f"    {json.dumps(n)}: {json.dumps(m)}" for n, m in v.items())
                body = "{\n" + inner + "\n  }"
        else:
            body = json.dumps(v, ensure_ascii=False)
        lines.append(f"  {json.dumps(k)}: {body}")
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _head(kind, name, comment, field: Field) -> dict:
    d = {"kind": kind}
    if name:
        d["name"] = name
    if comment:
        d["comment"] = comment
    d["field"] = field.characteristic
    return d


def dump_complex(x: ChainComplex, name: str = "", comment: str = "") -> str:
    d = _head("complex", name, comment, x.field)
    d["dims"] = _dims_out(x)
    d["diff"] = _degree_map_out(x.diffs)
    return _render(d)


def dump_coalgebra(c: DGCoalgebra, comment: str = "") -> str:
    d = _head("coalgebra", c.name, comment, c.field)
    d["dims"] = _dims_out(c.carrier)
    d["diff"] = _degree_map_out(c.carrier.diffs)
    d["comult"] = _degree_map_out(c.comult.mats)
    d["counit"] = _matrix_out(c.counit[0])[0] if c.carrier.dim(0) else []
    return _render(d)


def dump_comodule(x: DGComodule, coalgebra_ref: str, comment: str = "") -> str:
    d = _head("comodule", x.name, comment, x.field)
    d["coalgebra"] = coalgebra_ref
    d["dims"] = _dims_out(x.carrier)
    d["diff"] = _degree_map_out(x.carrier.diffs)
    d["coaction"] = _degree_map_out(x.coaction.mats)
    if x.left_given is not None:
        d["left"] = _degree_map_out(x.left_given.mats)
    return _render(d)


def dump_map(f, source_ref: str, target_ref: str, name: str = "", comment: str = "") -> str:
    kind = "coalgebra-map" if isinstance(f, CoalgebraMap) else "comodule-map"
    d = _head(kind, name, comment, f.map.field)
    d["source"] = source_ref
    d["target"] = target_ref
    d["map"] = _degree_map_out(f.map.mats)
    return _render(d)


def dumps(obj, text_of_source: dict | None = None, comment: str = "") -> str:
    """Serialize a parsed object, reusing the references recorded in ``text_of_source``.

    ``text_of_source`` is the decoded JSON the object was parsed from (for
    references and names); the result is canonical, so parsing a canonical
    file and dumping it reproduces the file byte for byte.
    """
    src = text_of_source or {}
    comment = src.get("comment", comment)
    if isinstance(obj, ChainComplex):
        return dump_complex(obj, src.get("name", ""), comment)
    if isinstance(obj, DGCoalgebra):
        return dump_coalgebra(obj, comment)
    if isinstance(obj, DGComodule):
        return dump_comodule(obj, src.get("coalgebra", obj.coalgebra.name), comment)
    if isinstance(obj, (CoalgebraMap, ComoduleMap)):
        return dump_map(obj, src.get("source", ""), src.get("target", ""), src.get("name", ""), comment)
    raise TypeError(f"cannot serialize {type(obj).__name__}")
