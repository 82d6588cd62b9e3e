"""Command line front end: ``cotensor <command> [options]``.

Exit codes: 0 ok, 1 precondition failure (invalid input, window too small,
unsupported coalgebra), 2 parse error, 3 failed internal verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path

from .chain_complex import ChainComplex, Report, homology_dims, split_complex, validate_complex
from .coalgebra import CoalgebraMap, DGCoalgebra, validate_coalgebra_map
from .comodule import ComoduleMap, DGComodule, is_fibrant, is_fibration, validate_comodule, validate_comodule_map
from .cotensor import cobar_bicomplex, cotensor, cotor_cobar, cotor_resolution, ext
from .emss import (
    check_page,
    collapse_check,
    convergence_check,
    e2_crosscheck,
    spectral_sequence,
    total_homology,
)
from .field_linalg import Field
from .formats import ParseError, Reader, fixture_roots, resolve_path
from .postnikov import factorize, postnikov_tower, stabilized_limit, verify_tower

__all__ = ["SessionConfig", "main", "run_command", "build_parser", "Outcome"]

OK, PRECONDITION, PARSE, BREACH = 0, 1, 2, 3


@dataclass(frozen=True)
class SessionConfig:
    field: Field | None = None
    maxdeg: int = 10
    qmax: int = 4
    fixture_roots: tuple[Path, ...] = ()
    fmt: str = "human"
    verify: bool = False

    def __post_init__(self):
        if self.maxdeg < 2:
            raise ValueError("maxdeg must be at least 2")
        if self.qmax < 1:
            raise ValueError("qmax must be at least 1")
        if self.fmt not in ("human", "machine"):
            raise ValueError("format is human or machine")


@dataclass
class Outcome:
    """A command's result: machine-readable ``data``, human ``lines`` and an exit code."""

    command: str
    code: int = OK
    lines: list = dc_field(default_factory=list)
    data: dict = dc_field(default_factory=dict)

    def say(self, line: str):
        self.lines.append(line)

    def fail(self, code: int, message: str):
        self.code = max(self.code, code)
        self.lines.append(message)
        self.data.setdefault("errors", []).append(message)
        return self

    def render(self, fmt: str) -> str:
        if fmt == "machine":
            body = {"command": self.command, "status": self.code, **self.data}
            return json.dumps(body, sort_keys=True, separators=(",", ":"))
        return "\n".join(self.lines)


class _Precondition(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _reader(cfg: SessionConfig) -> Reader:
    return Reader(cfg.field, cfg.maxdeg)


def _load(reader: Reader, ref: str):
    return reader.load(resolve_path(ref))


def _object_report(obj) -> Report:
    if isinstance(obj, ChainComplex):
        return validate_complex(obj)
    if isinstance(obj, DGCoalgebra):
        return obj.report
    if isinstance(obj, DGComodule):
        r = obj.coalgebra.report
        if not r:
            return Report(False, r.degree, "coalgebra: " + r.message)
        return validate_comodule(obj)
    if isinstance(obj, CoalgebraMap):
        for side in (obj.source, obj.target):
            r = side.report
            if not r:
                return Report(False, r.degree, f"{side.name or 'coalgebra'}: " + r.message)
        return validate_coalgebra_map(obj)
    if isinstance(obj, ComoduleMap):
        for side in (obj.source, obj.target):
            r = _object_report(side)
            if not r:
                return Report(False, r.degree, f"{side.name or 'comodule'}: " + r.message)
        return validate_comodule_map(obj)
    raise TypeError(type(obj).__name__)


def _need(obj, kinds, ref):
    if not isinstance(obj, kinds):
        names = " or ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise _Precondition(f"{ref}: expected a {names}, got a {type(obj).__name__}")
    r = _object_report(obj)
    if not r:
        raise _Precondition(f"{ref}: invalid input at degree {r.degree}: {r.message}")
    return obj


def _pair(reader, args):
    if not args.left or not args.right:
        raise _Precondition("--left and --right are required")
    x = _need(_load(reader, args.left), DGComodule, args.left)
    y = _need(_load(reader, args.right), DGComodule, args.right)
    cx, cy = x.coalgebra, y.coalgebra
    if cx is not cy and (cx.carrier != cy.carrier or cx.comult != cy.comult):
        raise _Precondition("left and right comodules are over different coalgebras")
    if not y.has_left:
        raise _Precondition(f"{args.right}: no left coaction and the coalgebra is not cocommutative")
    return x, y


def _carrier(obj):
    if isinstance(obj, ChainComplex):
        return obj
    return obj.carrier


def _name(obj, ref):
    return getattr(obj, "name", "") or Path(ref).stem


def _dims(seq):
    return [int(v) for v in seq]


# ---------------------------------------------------------------------------
# commands


def cmd_validate(cfg, args, out: Outcome):
    reader = _reader(cfg)
    obj = _load(reader, args.path)
    r = _object_report(obj)
    kind = type(obj).__name__
    out.data.update({"kind": kind, "ok": r.ok, "flags": {k: bool(v) for k, v in r.flags.items()}})
    if r:
        flags = ", ".join(k for k, v in r.flags.items() if v)
        out.say(f"{kind} {_name(obj, args.path)}: pass" + (f" ({flags})" if flags else ""))
    else:
        out.data["degree"] = r.degree
        out.fail(PRECONDITION, f"{kind} {_name(obj, args.path)}: FAIL at degree {r.degree}: {r.message}")


def cmd_homology(cfg, args, out):
    obj = _need(_load(_reader(cfg), args.path), (ChainComplex, DGCoalgebra, DGComodule), args.path)
    X = _carrier(obj)
    h = homology_dims(X)
    N = X.maxdeg
    out.data.update({"homology": h, "exact_through": N - 1})
    for n, d in enumerate(h):
        if d:
            out.say(f"H_{n}: dim {d}" + ("  (window edge, not exact)" if n == N else ""))
    out.say(f"exact through degree {N - 1}")


def cmd_split(cfg, args, out):
    obj = _need(_load(_reader(cfg), args.path), (ChainComplex, DGCoalgebra, DGComodule), args.path)
    s = split_complex(_carrier(obj))
    out.data.update({"V": _dims(s.V), "W": _dims(s.W)})
    out.say(f"V (homology): {list(s.V)}")
    out.say(f"W (disk generators, W_n in degree n): {list(s.W)}")
    if cfg.verify:
        X = _carrier(obj)
        ok = all((s.to_x[n] @ s.from_x[n]) == X.field.identity(X.dim(n)) for n in range(X.maxdeg + 1))
        ok = ok and all(X.dim(n) == s.V[n] + s.W[n] + (s.W[n + 1] if n + 1 < len(s.W) else 0)
                        for n in range(X.maxdeg + 1))
        out.data["verified"] = ok
        if not ok:
            return out.fail(BREACH, "splitting does not round-trip")
        out.say("verify: pass")


def cmd_cotensor(cfg, args, out):
    x, y = _pair(_reader(cfg), args)
    ct = cotensor(x, y)
    h = homology_dims(ct.complex)
    out.data.update({"dims": _dims(ct.complex.dims), "homology": h, "comodule": ct.comodule is not None})
    out.say(f"X □ Y dims: {list(ct.complex.dims)}")
    out.say(f"H(X □ Y): {h}")


def cmd_cotor(cfg, args, out):
    x, y = _pair(_reader(cfg), args)
    q = args.q
    if q is None or q < 0:
        raise _Precondition("--q must be a non-negative integer")
    r = cotor_cobar(x, y, q)
    nz = r.nonzero()
    out.data.update({"q": q, "dims": _dims(r.dims), "exact_through": r.exact_through})
    for p, d in nz:
        out.say(f"CoTor^{q}: dim {d} at chain degree {p}")
    if not nz:
        out.say(f"CoTor^{q}: zero through chain degree {r.exact_through}")
    if cfg.verify:
        if q > 2:
            out.say("verify: resolution cross-check runs for q <= 2 only")
            return
        ref = cotor_resolution(x, y, q)
        top = min(r.exact_through, ref.exact_through)
        ok = r.dims[:top + 1] == ref.dims[:top + 1]
        out.data["verified"] = ok
        if not ok:
            return out.fail(BREACH, f"cobar and resolution routes differ: {r.dims} vs {ref.dims}")
        out.say(f"verify: injective resolution agrees through degree {top}")


def cmd_ext(cfg, args, out):
    x, y = _pair(_reader(cfg), args)
    i = args.q
    if i is None or i < 0:
        raise _Precondition("--q must be a non-negative integer")
    N = cfg.maxdeg
    res = ext(x, y, i, range(-N, N + 1))
    out.data.update({"i": i, "ext": {str(m): [d, e] for m, (d, e) in res.items()}})
    nz = [(m, d, e) for m, (d, e) in res.items() if d]
    for m, d, e in nz:
        out.say(f"Ext^{i}: dim {d} in internal degree {m}" + ("" if e else "  (window edge, not exact)"))
    if not nz:
        out.say(f"Ext^{i}: zero in internal degrees {-N}..{N}")


def cmd_fibrant(cfg, args, out):
    x = _need(_load(_reader(cfg), args.path), DGComodule, args.path)
    r = is_fibrant(x)
    out.data.update({"fibrant": r.value, "through": r.through_degree, "certificate": r.certificate})
    if r.value:
        out.say(f"fibrant through degree {r.through_degree}")
    else:
        out.say(f"not fibrant: {r.reason}")


def cmd_fibration(cfg, args, out):
    f = _need(_load(_reader(cfg), args.path), ComoduleMap, args.path)
    r = is_fibration(f)
    out.data.update({"fibration": r.value, "through": r.through_degree,
                     "certificate": r.certificate, "reason": r.reason})
    word = {True: "fibration", False: "not a fibration", None: "inconclusive"}[r.value]
    out.say(f"{word}: {r.reason}" if r.reason else word)


def cmd_postnikov(cfg, args, out):
    x = _need(_load(_reader(cfg), args.path), DGComodule, args.path)
    S = args.stages if args.stages is not None else min(7, x.maxdeg)
    t = postnikov_tower(x, S)
    stages = [_dims(s.dims) for s in t.stages]
    out.data.update({"stages": stages, "V": _dims(t.V)})
    for n, s in enumerate(t.stages):
        out.say(f"X({n}): dims {list(s.dims)}" + (f", V_{n} = {t.V[n]}" if n >= 2 else ""))
    if cfg.verify:
        r = verify_tower(t)
        out.data["verify_tower"] = r.ok
        if not r:
            return out.fail(BREACH, f"verify_tower: FAIL at degree {r.degree}: {r.message}")
        out.say("verify_tower: pass")
        if t.count >= 3:
            lim = stabilized_limit(t)
            fib = is_fibrant(lim.obj)
            out.data["limit"] = {"dims": _dims(lim.obj.dims), "fibrant": fib.value,
                                 "homology_exact_through": lim.homology_exact_through}
            out.say(f"limit: dims {list(lim.obj.dims)}, fibrant: {fib.value}")
            if not fib.value:
                return out.fail(BREACH, "stabilized limit is not fibrant")


def cmd_factorize(cfg, args, out):
    f = _need(_load(_reader(cfg), args.path), ComoduleMap, args.path)
    F = factorize(f)
    out.data.update({"V": _dims(F.V), "limit": _dims(F.limit.dims), "exact_through": F.exact_through})
    out.say(f"stages: {len(F.stages)}, V = {list(F.V)}")
    out.say(f"limit: dims {list(F.limit.dims)} (window {F.exact_through})")
    if cfg.verify:
        r = F.verify()
        out.data["verified"] = r.ok
        if not r:
            return out.fail(BREACH, f"factorization: FAIL at degree {r.degree}: {r.message}")
        out.say("verify: pass")


def _cells(page):
    return [[q, p, d] for q, p, d in page.nonzero()]


def cmd_emss(cfg, args, out):
    x, y = _pair(_reader(cfg), args)
    qmax = cfg.qmax
    b = cobar_bicomplex(x, y, qmax)
    ss = spectral_sequence(b)
    th = total_homology(b)
    e1, e2, einf = ss.page(1), ss.page(2), ss.einfty()
    collapse = ss.collapse_page()
    out.data.update({"E1": _cells(e1), "E2": _cells(e2), "Einf": _cells(einf), "collapse_page": collapse,
                     "total_homology": _dims(th.dims), "exact_through": th.exact_through, "qmax": qmax})
    for label, page in (("E1", e1), ("E2", e2), ("Einf", einf)):
        cells = ", ".join(f"({q},{p}):{d}" for q, p, d in page.nonzero()) or "zero"
        out.say(f"{label} (q,p):dim  {cells}")
    out.say(f"collapses at E{collapse}")
    out.say(f"H(Tot): {list(th.dims)} (exact through total degree {th.exact_through})")
    if cfg.verify:
        checks = {}
        pages = ss.pages
        checks["pages"] = all(check_page(a, c).ok for a, c in zip(pages, pages[1:]))
        checks["convergence"] = convergence_check(b, ss).ok
        checks["e2_vs_homology_cotor"] = e2_crosscheck(x, y, qmax, e2).ok
        if x.coalgebra.cocommutative and is_fibrant(x).value:
            checks["collapse_onto_cotensor"] = collapse_check(x, y, qmax, b).ok
        out.data["checks"] = checks
        for k, v in checks.items():
            out.say(f"{k}: {'pass' if v else 'FAIL'}")
        if not all(checks.values()):
            return out.fail(BREACH, "spectral sequence self-check failed")


def cmd_fixtures(cfg, args, out):
    rows = []
    seen = set()
    for root in fixture_roots():
        if not root.is_dir():
            continue
        for p in sorted(root.iterdir()):
            if not p.is_file() or p.name in seen:
                continue
            seen.add(p.name)
            try:
                d = json.loads(p.read_text(encoding="utf-8"))
            except (ValueError, OSError):
                continue
            if not isinstance(d, dict):
                continue
            rows.append({"file": p.name, "kind": d.get("kind", "?"), "comment": d.get("comment", "")})
    out.data["fixtures"] = rows
    for r in rows:
        out.say(f"{r['file']:<22} {r['kind']:<14} {r['comment']}")


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "split": cmd_split,
    "cotensor": cmd_cotensor,
    "cotor": cmd_cotor,
    "ext": cmd_ext,
    "fibrant": cmd_fibrant,
    "fibration": cmd_fibration,
    "postnikov": cmd_postnikov,
    "factorize": cmd_factorize,
    "emss": cmd_emss,
    "fixtures": cmd_fixtures,
}


def _common(suppress: bool) -> argparse.ArgumentParser:
    # subcommands repeat the global flags without defaults so either position works
    dflt = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=int, default=dflt(None), help="characteristic (0 for Q); overrides the files")
    common.add_argument("--maxdeg", type=int, default=dflt(10), help="degree window (default 10)")
    common.add_argument("--qmax", type=int, default=dflt(4), help="highest cobar degree for emss (default 4)")
    common.add_argument("--format", choices=("human", "machine"), default=dflt("human"))
    common.add_argument("--verify", action="store_true", default=dflt(False),
                        help="run the independent cross-checks")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common(True)
    ap = argparse.ArgumentParser(prog="cotensor", description="Comodules, cotensor products and CoTor over a field.",
                                 parents=[_common(False)])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("validate", "homology", "split", "fibrant", "fibration", "factorize"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("path")
    sp = sub.add_parser("postnikov", parents=[common])
    sp.add_argument("path")
    sp.add_argument("--stages", type=int, default=None)
    for name in ("cotensor", "cotor", "ext", "emss"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--left", required=True)
        sp.add_argument("--right", required=True)
        if name in ("cotor", "ext"):
            sp.add_argument("--q", type=int, required=True)
    sub.add_parser("fixtures", parents=[common])
    return ap


def run_command(cmd: str, args, cfg: SessionConfig) -> Outcome:
    out = Outcome(cmd)
    try:
        COMMANDS[cmd](cfg, args, out)
    except ParseError as e:
        out.fail(PARSE, f"parse error: {e}")
    except _Precondition as e:
        out.fail(PRECONDITION, f"precondition: {e}")
    except ValueError as e:
        out.fail(PRECONDITION, f"precondition: {e}")
    except ArithmeticError as e:
        out.fail(BREACH, f"internal invariant: {e}")
    return out


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return PARSE if e.code else OK
    try:
        field = Field(args.field) if args.field is not None else None
        cfg = SessionConfig(field, args.maxdeg, args.qmax, tuple(fixture_roots()), args.format, args.verify)
    except ValueError as e:
        print(f"precondition: {e}", file=sys.stderr)
        return PRECONDITION
    out = run_command(args.command, args, cfg)
    text = out.render(cfg.fmt)
    if text:
        print(text)
    return out.code


if __name__ == "__main__":
    sys.exit(main())
