"""Command-line front end.

Every subcommand prints a short human summary followed by a JSON report
(one object, sorted keys).  Graph arguments are either a built-in name
(``triangle``, ``k4``, ``c5``, ``p4``, ``star4``, ``banana3``, ``k2x3``) or
a path to a JSON instance file.  Several graph arguments are processed as
independent work units; ``--jobs`` runs them in worker processes.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import graph as G
from .drawing import Drawing, export_svg, segment_count, validate_drawing
from .io import FormatError, dumps_instance, loads_instance

HARD_CAPS = {"grid": 9, "k": 6, "s": 12, "vertices": 12}


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    instance: str
    summary: dict
    method: str
    verdict: object
    witness: str | None = None
    scope: str = ""
    config: dict = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self, timing: bool = True) -> str:
        d = asdict(self)
        if not timing:
            d.pop("seconds")
        return json.dumps(d, sort_keys=True)


# ---------------------------------------------------------------------------
# graph arguments
# ---------------------------------------------------------------------------

_BUILTIN = [
    (r"triangle", lambda m: G.complete_graph(3)),
    (r"k(\d+)x(\d+)", lambda m: G.complete_bipartite(int(m[1]), int(m[2]))),
    (r"k(\d+)", lambda m: G.complete_graph(int(m[1]))),
    (r"c(\d+)", lambda m: G.cycle_graph(int(m[1]))),
    (r"p(\d+)", lambda m: G.path_graph(int(m[1]))),
    (r"star(\d+)", lambda m: G.star_graph(int(m[1]))),
    (r"banana(\d+)", lambda m: G.banana_graph(int(m[1]))),
]


def load_instance(arg: str):
    low = arg.lower()
    for pat, make in _BUILTIN:
        m = re.fullmatch(pat, low)
        if m:
            return make(m), None
    p = Path(arg)
    if not p.exists():
        raise UsageError(f"{arg}: neither a built-in graph name nor a file")
    inst = loads_instance(p.read_text())
    return inst.graph, inst


def _summary(g) -> dict:
    return {"n": g.n, "m": g.m}


def _cap(name: str, value: int) -> int:
    if value > HARD_CAPS[name]:
        raise UsageError(f"--{name} {value} exceeds the hard ceiling {HARD_CAPS[name]}")
    return value


def _write_witness(d: Drawing | None, out: str | None, stem: str) -> str | None:
    if d is None or out is None:
        return None
    path = Path(out)
    if path.suffix == ".svg":
        path.write_text(export_svg(d, labels=True))
    else:
        pos = {v: (d[v].x, d[v].y) for v in range(d.graph.n)}
        path.write_text(dumps_instance(d.graph, positions=pos))
    return str(path)


# ---------------------------------------------------------------------------
# subcommands; each returns (human line, RunReport)
# ---------------------------------------------------------------------------


def cmd_oracle(a, arg):
    from .oracle import OracleConfig, oracle_lin, oracle_seg

    g, _ = load_instance(arg)
    cfg = OracleConfig(grid_width=_cap("grid", a.grid))
    res = (oracle_lin if a.lines else oracle_seg)(g, cfg)
    w = _write_witness(res.witness, a.out, arg)
    rep = RunReport("oracle", arg, _summary(g), "grid oracle (lines)" if a.lines else "grid oracle",
                    res.value, w, f"grid-restricted W={res.grid_width}", {"grid": a.grid, "lines": a.lines},
                    ["grid-restricted"])
    return str(res.value), rep


def _banana_spec(a):
    from .banana import BananaCycleSpec, BananaPathSpec, BananaTreeSpec

    if a.path:
        return "path", BananaPathSpec(tuple(a.path))
    if a.cycle:
        return "cycle", BananaCycleSpec(tuple(a.cycle))
    if a.tree:
        edges = []
        for tok in a.tree:
            u, v, k = (int(x) for x in tok.split(":"))
            edges.append((u, v, k))
        n = 1 + len(edges)
        return "tree", BananaTreeSpec(n, tuple(edges))
    raise UsageError("banana needs --path, --tree or --cycle")


def cmd_banana(a, arg=None):
    from . import banana as B

    kind, spec = _banana_spec(a)
    value = {"path": B.seg_banana_path, "cycle": B.seg_banana_cycle, "tree": B.seg_banana_tree}[kind](spec)
    draw = {"path": B.draw_banana_path, "cycle": B.draw_banana_cycle, "tree": B.draw_banana_tree}[kind](spec)
    if not validate_drawing(draw) or segment_count(draw) != value:
        raise RuntimeError("certificate drawing does not match the formula")
    out = a.out or "banana_certificate.svg"
    w = _write_witness(draw, out, "banana")
    flags = []
    if kind == "path":
        flags.append(f"printed-formula value {B.seg_banana_path_printed(spec)}")
    rep = RunReport("banana", f"{kind} {spec}", _summary(spec.graph()), f"closed formula ({kind})", value, w,
                    "exact (certificate drawing validated)", {"kind": kind}, flags)
    return str(value), rep


def cmd_seg(a, arg):
    from .fpt import segment_number_natural

    g, _ = load_instance(arg)
    k = _cap("k", a.k)
    res = segment_number_natural(g, k, cap=a.cap)
    w = _write_witness(res.witness, a.out, arg)
    flags = ["unknown arrangements skipped"] if res.qualified else []
    rep = RunReport("seg", arg, _summary(g), "arrangement/routing FPT", bool(res.value), w,
                    "exact witness" if res.value else "exhaustive over realized arrangements",
                    {"k": k, "cap": a.cap}, flags)
    return str(bool(res.value)).lower(), rep


def cmd_seg_vc(a, arg):
    from .vc import segment_number_vc

    g, _ = load_instance(arg)
    s = _cap("s", a.s)
    res = segment_number_vc(g, limit=s, cap=a.cap)
    ans, qualified = res.decide(s)
    w = _write_witness(res.witness, a.out, arg)
    flags = ["yes-if: a configuration claiming <= s was not certified"] if qualified else []
    if a.dump and res.winner is not None:
        print(res.winner.describe(), file=sys.stderr)
        print(res.winner.plan.model.dump(), file=sys.stderr)
    rep = RunReport("seg-vc", arg, _summary(g), "vertex cover pipeline", ans, w,
                    "exact witness" if ans else "lower bound from the configuration claims",
                    {"s": s, "cap": a.cap}, flags)
    return str(ans).lower(), rep


def cmd_list_cover(a, arg):
    from .fpt import full_lists, list_line_cover, list_segment_number

    g, inst = load_instance(arg)
    k = _cap("k", a.k if a.k is not None else (inst.k if inst and inst.k else 0))
    if k <= 0:
        raise UsageError("list-cover needs --k or a k field in the instance")
    lists = inst.lists if inst is not None and inst.lists is not None else full_lists(g, k)
    fn = list_line_cover if a.mode == "line" else list_segment_number
    res = fn(g, k, lists, cap=a.cap)
    w = _write_witness(res.witness, a.out, arg)
    rep = RunReport("list-cover", arg, _summary(g), f"list incidence ({a.mode})", bool(res.value), w,
                    "exact witness" if res.value else "exhaustive over realized arrangements",
                    {"k": k, "mode": a.mode, "cap": a.cap}, ["unknown arrangements skipped"] if res.qualified else [])
    return str(bool(res.value)).lower(), rep


def cmd_arrangements(a, arg=None):
    from .arrangements import EnumerationStats, enumerate_arrangements

    k = _cap("k", a.k)
    st = EnumerationStats()
    arrs = list(enumerate_arrangements(k, keep_unknown=a.keep_unknown, stats=st))
    if a.verbose:
        for arr in arrs:
            print(arr.dump())
    rep = RunReport("arrangements", f"k={k}", {"k": k}, "combinatorial enumeration + exact realisation",
                    len(arrs), None, "realized classes" + (" plus unknown" if a.keep_unknown else ""),
                    {"k": k, "keep_unknown": a.keep_unknown},
                    [f"candidates={st.candidates}", f"classes={st.classes}", f"realized={st.realized}",
                     f"unknown={st.unknown}"])
    return str(len(arrs)), rep


def _formula(a, g):
    from .realizability import build_segment_formula
    return build_segment_formula(g, _cap("k", a.k))


def cmd_encode(a, arg):
    from .realizability import emit_smt

    g, _ = load_instance(arg)
    f = _formula(a, g)
    text = emit_smt(f)
    out = a.out or "formula.smt2"
    Path(out).write_text(text)
    rep = RunReport("encode", arg, _summary(g), "segment formula", f"{f.n_points} points, {len(f.clauses)} clauses",
                    out, "SMT-LIB 2 (QF_NRA)", {"k": a.k})
    return out, rep


def cmd_decide(a, arg):
    from .realizability import EmitOnly, GridComplete, NumericSat, decide

    g, _ = load_instance(arg)
    f = _formula(a, g)
    strat = {"grid": GridComplete(_cap("grid", a.grid)), "numeric": NumericSat(seed=a.seed),
             "emit": EmitOnly(a.out)}[a.strategy]
    v = decide(f, strat)
    d = v.drawing(f) if v.sat else None
    w = _write_witness(d, a.out if a.strategy != "emit" else None, arg)
    flags = ["grid-restricted"] if v.status == "unsat" and "grid" in v.scope else []
    if v.status == "unknown":
        flags.append("numeric-unknown")
    rep = RunReport("decide", arg, _summary(g), f"segment formula / {a.strategy}", v.status, w, v.scope,
                    {"k": a.k, "strategy": a.strategy, "grid": a.grid, "seed": a.seed}, flags)
    return v.status, rep


def cmd_render(a, arg):
    g, inst = load_instance(arg)
    if inst is None or inst.positions is None:
        raise UsageError("render needs an instance file with positions")
    from .drawing import Point

    d = Drawing(g, {v: Point(*inst.positions[v]) for v in range(g.n)})
    rep_valid = validate_drawing(d)
    out = a.out or "drawing.svg"
    Path(out).write_text(export_svg(d, labels=True))
    segs = segment_count(d) if rep_valid else None
    rep = RunReport("render", arg, _summary(g), "svg export", {"valid": bool(rep_valid), "segments": segs}, out,
                    "exact", {})
    return f"valid={bool(rep_valid)} segments={segs}", rep


COMMANDS = {
    "oracle": cmd_oracle, "banana": cmd_banana, "seg": cmd_seg, "seg-vc": cmd_seg_vc,
    "list-cover": cmd_list_cover, "arrangements": cmd_arrangements, "encode": cmd_encode,
    "decide": cmd_decide, "render": cmd_render,
}
NO_GRAPH = {"banana", "arrangements"}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="segnum", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, graphs=True, **kw):
        sp = sub.add_parser(name, **kw)
        if graphs:
            sp.add_argument("graphs", nargs="+", help="built-in name or JSON instance file")
        sp.add_argument("--out", help="witness/certificate output (.svg or .json)")
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--no-timing", action="store_true", help="omit timing from the report")
        return sp

    sp = add("oracle")
    sp.add_argument("--grid", type=int, default=5)
    sp.add_argument("--lines", action="store_true", help="minimise supporting lines instead")
    sp = add("banana", graphs=False)
    sp.add_argument("--path", type=int, nargs="+")
    sp.add_argument("--cycle", type=int, nargs="+")
    sp.add_argument("--tree", nargs="+", metavar="U:V:K")
    sp = add("seg")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--cap", type=int, default=4)
    sp = add("seg-vc")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--cap", type=int, default=3)
    sp.add_argument("--dump", action="store_true", help="print the winning configuration and ILP to stderr")
    sp = add("list-cover")
    sp.add_argument("--k", type=int)
    sp.add_argument("--mode", choices=["line", "segment"], default="segment")
    sp.add_argument("--cap", type=int, default=4)
    sp = add("arrangements", graphs=False)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--keep-unknown", action="store_true")
    sp.add_argument("--verbose", action="store_true")
    sp = add("encode")
    sp.add_argument("--k", type=int, required=True)
    sp = add("decide")
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--strategy", choices=["grid", "numeric", "emit"], default="grid")
    sp.add_argument("--grid", type=int, default=5)
    sp.add_argument("--seed", type=int, default=0)
    add("render")
    return p


def _run_one(ns_dict: dict, arg):
    a = argparse.Namespace(**ns_dict)
    t = time.perf_counter()
    line, rep = COMMANDS[a.command](a, arg)
    rep.seconds = round(time.perf_counter() - t, 3)
    return line, rep.to_json(timing=not a.no_timing)


def main(argv=None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    if a.jobs < 1:
        parser.error("--jobs must be at least 1")
    work = [None] if a.command in NO_GRAPH else a.graphs
    if len(work) > 1 and a.out:
        parser.error("--out takes a single graph argument")
    try:
        if a.jobs > 1 and len(work) > 1:
            with ProcessPoolExecutor(a.jobs) as ex:
                results = list(ex.map(_run_one, [vars(a)] * len(work), work))
        else:
            results = [_run_one(vars(a), w) for w in work]
    except (UsageError, FormatError, G.GraphError, ValueError) as exc:
        print(f"segnum {a.command}: {exc}", file=sys.stderr)
        return 2
    for line, rep in results:
        print(line)
        print(rep)
    return 0


if __name__ == "__main__":
    sys.exit(main())
