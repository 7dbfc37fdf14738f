"""Command-line workbench.

Every subcommand prints ``key: value`` report lines in a fixed order, or one
JSON object with the same keys (in the same order) under ``--json``.  The exit
code is 0 exactly when every check the invocation asked for passed.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from pathlib import Path
from typing import Callable

from . import catalog, geography
from .factorization import (
    Document,
    Factorization,
    FactorizationError,
    chain_substitute,
    check_h1,
    cyclic_rotate,
    fiber_sum,
    global_conjugate,
    hurwitz_move,
    insert,
    lantern_substitute,
    load_document,
    move_token,
    rotate_by_hurwitz,
    simplify_token,
    type_of,
    verify_identity,
)
from .config import WorkbenchConfig
from .mcg import parse_mcg_word


class Report:
    def __init__(self) -> None:
        self.fields: list[tuple[str, object]] = []
        self.ok = True

    def add(self, key: str, value) -> None:
        self.fields.append((key, value))

    def fail(self, key: str, value) -> None:
        self.ok = False
        self.add(key, value)

    def emit(self, as_json: bool, out=None) -> None:
        out = out or sys.stdout
        if as_json:
            obj: dict[str, object] = {}
            for k, v in self.fields:
                obj[k] = v if isinstance(v, (int, bool, list, dict)) or v is None else str(v)
            obj["ok"] = self.ok
            out.write(json.dumps(obj) + "\n")
        else:
            for k, v in self.fields:
                out.write(f"{k}: {v}\n")
            out.write(f"ok: {'yes' if self.ok else 'no'}\n")


def _load(source: str, name: str | None = None) -> tuple[Document, Factorization]:
    """``FILE NAME``, ``FILE:NAME`` or a bare catalog name."""
    if name is None:
        path, sep, name = source.rpartition(":")
        if not sep:
            return catalog.document(), catalog.factorization(source)
        source = path
    doc = catalog.document() if source == "catalog" else load_document(source)
    return doc, doc.factorization(name)


def _verify_into(rep: Report, f: Factorization, max_length: int, prefix: str = "") -> Factorization:
    f, vr = verify_identity(f, max_length)
    for k, v in vr.lines():
        rep.add(prefix + k, v)
    if not vr.ok:
        rep.ok = False
        return f
    f, g = check_h1(f)
    rep.add(prefix + "h1", str(g))
    return f


def cmd_verify(a, rep: Report) -> None:
    _, f = _load(a.file, a.name)
    rep.add("name", f.name or a.name)
    rep.add("length", len(f))
    _verify_into(rep, f, a.max_length)


def cmd_invariants(a, rep: Report) -> None:
    n, s = (int(v) for v in a.type.split(","))
    inv = geography.invariants_from_type((n, s))
    rep.add("type", f"({n},{s})")
    rep.add("e", inv.e)
    rep.add("sigma", inv.sigma)
    rep.add("chi_h", inv.chi_h)
    rep.add("c1sq", inv.c1sq)
    rep.add("m", inv.m)
    try:
        rep.add("slope", str(geography.slope((n, s))))
    except geography.GeographyError:
        rep.add("slope", "undefined (chi_h = 0)")


def _positions(text: str) -> list[int]:
    return [int(v) for v in text.split(",")]


def apply_script(doc: Document, f: Factorization, script: str) -> Factorization:
    """Apply a move script; one move per line, ``#`` starts a comment.

    ``hurwitz I [+1|-1]``, ``move I J``, ``rotate K``, ``hrotate K``,
    ``conjugate WORD``, ``simplify I [CURVE]``, ``insert I FACT``,
    ``lantern I,J,K,L CURVE CURVE CURVE``, ``chain I CURVE``.
    Indices are 0-based; words are mapping class words such as ``"1' 4"``.
    """
    for lineno, raw in enumerate(script.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        op, *args = shlex.split(line)
        try:
            if op == "hurwitz":
                f = hurwitz_move(f, int(args[0]), int(args[1]) if len(args) > 1 else 1)
            elif op == "move":
                f = move_token(f, int(args[0]), int(args[1]))
            elif op == "rotate":
                f = cyclic_rotate(f, int(args[0]))
            elif op == "hrotate":
                f = rotate_by_hurwitz(f, int(args[0]))
            elif op == "conjugate":
                f = global_conjugate(f, parse_mcg_word(args[0]))
            elif op == "simplify":
                cand = doc.curves[args[1]] if len(args) > 1 else None
                f = simplify_token(f, int(args[0]), cand, args[1] if len(args) > 1 else None)
            elif op == "insert":
                f = insert(f, int(args[0]), doc.factorization(args[1]))
            elif op == "lantern":
                repl = [doc.curves[n] for n in args[1:]]
                f = lantern_substitute(f, _positions(args[0]), repl)
            elif op == "chain":
                f = chain_substitute(f, int(args[0]), doc.curves[args[1]])
            else:
                raise FactorizationError(f"unknown move {op!r}")
        except (IndexError, KeyError, ValueError) as exc:
            raise FactorizationError(f"script line {lineno}: {exc}") from None
    return f


def _write(doc: Document, name: str, f: Factorization, path: str | None) -> str:
    doc.add_factorization(name, f)
    text = doc.render()
    if path:
        Path(path).write_text(text, encoding="utf-8")
    return text


def _fresh(doc: Document) -> Document:
    """A copy of doc holding only its curves."""
    out = Document()
    for n, c in doc.curves.items():
        out.add_curve(n, c)
    return out


def cmd_rewrite(a, rep: Report) -> None:
    doc, f = _load(a.file, a.name)
    f = apply_script(doc, f, Path(a.script).read_text(encoding="utf-8"))
    rep.add("moves", "applied")
    rep.add("length", len(f))
    f = _verify_into(rep, f, a.max_length)
    _write(_fresh(doc), a.out_name or f"{a.name}_r", f, a.out)
    if a.out:
        rep.add("written", a.out)


def cmd_fibersum(a, rep: Report) -> None:
    doc1, f1 = _load(a.f1)
    _, f2 = _load(a.f2)
    f = fiber_sum(f1, f2, parse_mcg_word(a.twist))
    rep.add("type", str(type_of(f)))
    f = _verify_into(rep, f, a.max_length)
    if a.out:
        _write(_fresh(doc1), a.out_name or "sum", f, a.out)
        rep.add("written", a.out)


def cmd_build(a, rep: Report) -> None:
    log = catalog.BuildLog()
    which = a.which
    if which in ("Xt", "Mt") and a.t is None:
        raise SystemExit(f"build {which} needs --t")
    t0 = time.perf_counter()
    if which == "X":
        f = catalog.build_X(log)
    elif which == "Xt":
        f = catalog.build_Xt(a.t, log)
    elif which == "W2438":
        f = catalog.build_2438(log)
    else:
        f = catalog.build_Mt(a.t, log)
    for k, (label, t) in enumerate(log.steps):
        rep.add(f"step{k}", f"{label} {t}")
    rep.add("name", f.name)
    f = _verify_into(rep, f, a.max_length)
    inv = geography.invariants_from_type(type_of(f))
    rep.add("point", f"({inv.chi_h},{inv.c1sq})")
    rep.add("slope", str(geography.slope(type_of(f))))
    rep.add("flags", " ".join(sorted(f.ledger.flags)) or "-")
    if a.timing:
        rep.add("seconds", f"{time.perf_counter() - t0:.2f}")
    if a.out:
        _write(Document(), f.name or which, f, a.out)
        rep.add("written", a.out)


def cmd_plan(a, rep: Report) -> None:
    try:
        r = geography.plan(a.chi, a.c1sq)
    except geography.OutsideRegion as exc:
        rep.add("point", f"({a.chi},{a.c1sq})")
        rep.fail("rejected", exc.bound)
        rep.add("reason", str(exc))
        return
    t = r.predicted_type()
    rep.add("point", f"({a.chi},{a.c1sq})")
    rep.add("region", geography.region_check(a.chi, a.c1sq).region)
    rep.add("recipe", geography.describe(r))
    rep.add("tree", r.render())
    rep.add("type", str(t))
    if not a.materialize:
        return
    try:
        f = geography.materialize(r)
    except geography.StubLeaf as exc:
        rep.fail("materialize", f"stub leaf: {exc}")
        return
    f = _verify_into(rep, f, a.max_length)
    if type_of(f) != t:
        rep.fail("type_mismatch", str(type_of(f)))
    if a.out:
        _write(Document(), "planned", f, a.out)
        rep.add("written", a.out)


def cmd_region(a, rep: Report) -> None:
    rows = geography.region_table(a.xmax, a.simply_connected)
    counts: dict[str, int] = {}
    for _, _, r in rows:
        counts[r] = counts.get(r, 0) + 1
    for name in geography.REGIONS:
        rep.add(name, counts.get(name, 0))
    if a.tsv:
        Path(a.tsv).write_text(geography.region_tsv(rows), encoding="utf-8")
        rep.add("tsv", a.tsv)
    if a.svg:
        Path(a.svg).write_text(geography.region_svg(rows), encoding="utf-8")
        rep.add("svg", a.svg)


def cmd_relcheck(a, rep: Report) -> None:
    for name, ok in catalog.full_relation_suite():
        if ok:
            rep.add(name, "holds")
        else:
            rep.fail(name, "FAILS")


def cmd_tietze(a, rep: Report) -> None:
    _, f = _load(a.file, a.name)
    res = geography.tietze_simplify(geography.pi1_presentation(f), a.budget)
    rep.add("generators", res.presentation.ngens)
    rep.add("presentation", res.presentation.render())
    rep.add("moves", res.moves)
    rep.add("budget_exhausted", "yes" if res.exhausted else "no")
    if a.require_trivial and res.presentation.ngens:
        rep.ok = False


COMMANDS: dict[str, Callable] = {
    "verify": cmd_verify,
    "invariants": cmd_invariants,
    "rewrite": cmd_rewrite,
    "fibersum": cmd_fibersum,
    "build": cmd_build,
    "plan": cmd_plan,
    "region": cmd_region,
    "relcheck": cmd_relcheck,
    "tietze": cmd_tietze,
}


def build_parser() -> argparse.ArgumentParser:
    cfg = WorkbenchConfig.from_env()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="one JSON object instead of key: value lines")
    common.add_argument("--max-length", type=int, default=cfg.max_length, help="word length cap")

    p = argparse.ArgumentParser(prog="genus2lf", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify a factorization")
    v.add_argument("file", help="factorization file, or 'catalog'")
    v.add_argument("name")

    i = sub.add_parser("invariants", parents=[common], help="invariants of a type")
    i.add_argument("--type", required=True, help="N,S")

    r = sub.add_parser("rewrite", parents=[common], help="apply a move script")
    r.add_argument("file")
    r.add_argument("name")
    r.add_argument("--script", required=True)
    r.add_argument("--out")
    r.add_argument("--out-name")

    f = sub.add_parser("fibersum", parents=[common], help="twisted fiber sum")
    f.add_argument("f1", help="FILE:NAME or catalog name")
    f.add_argument("f2")
    f.add_argument("--twist", default="e")
    f.add_argument("--out")
    f.add_argument("--out-name")

    b = sub.add_parser("build", parents=[common], help="run a catalog construction")
    b.add_argument("which", choices=["X", "Xt", "W2438", "Mt"])
    b.add_argument("--t", type=int)
    b.add_argument("--out")
    b.add_argument("--timing", action="store_true")

    pl = sub.add_parser("plan", parents=[common], help="plan a construction for a point")
    pl.add_argument("--chi", type=int, required=True)
    pl.add_argument("--c1sq", type=int, required=True)
    pl.add_argument("--materialize", action="store_true")
    pl.add_argument("--out")

    g = sub.add_parser("region", parents=[common], help="classify lattice points")
    g.add_argument("--xmax", type=int, required=True)
    g.add_argument("--simply-connected", action="store_true")
    g.add_argument("--svg")
    g.add_argument("--tsv")

    sub.add_parser("relcheck", parents=[common], help="check the relation suite")

    t = sub.add_parser("tietze", parents=[common], help="simplify the pi_1 presentation")
    t.add_argument("file")
    t.add_argument("name")
    t.add_argument("--budget", type=int, default=cfg.tietze_budget)
    t.add_argument("--require-trivial", action="store_true")
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    a = build_parser().parse_args(argv)
    rep = Report()
    try:
        COMMANDS[a.cmd](a, rep)
    except (FactorizationError, geography.GeographyError, catalog.BuildError, KeyError, OSError) as exc:
        rep.fail("error", str(exc).strip("'\""))
    rep.emit(a.json, out)
    return 0 if rep.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
