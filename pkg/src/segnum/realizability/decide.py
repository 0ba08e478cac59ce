"""Decision strategies standing in for a complete real-arithmetic decider.

* :class:`GridComplete` searches every placement of the points on a
  ``W x W`` integer grid.  Sound and complete for that restricted question.
* :class:`NumericSat` minimises a violation penalty from random starts and
  only answers ``sat`` with an exact rational witness that passes every
  atom.  Otherwise ``unknown``.
* :class:`EmitOnly` writes the SMT-LIB file and answers ``unknown``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import combinatorial_embedding_to_pos
from scipy.optimize import minimize

from ..drawing import Drawing, Point, ccw_order, same_cyclic_order, validate_drawing
from .formula import Clause, RealFormula
from .smt import emit_smt


@dataclass(frozen=True)
class Verdict:
    status: str                      # "sat" | "unsat" | "unknown"
    witness: tuple[Point, ...] | None = None
    scope: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def sat(self) -> bool:
        return self.status == "sat"

    def drawing(self, f: RealFormula) -> Drawing | None:
        if self.witness is None or f.graph is None:
            return None
        return Drawing(f.graph, {v: self.witness[v] for v in range(f.graph.n)})


@dataclass(frozen=True)
class GridComplete:
    width: int = 5
    node_budget: int | None = 20_000_000


@dataclass(frozen=True)
class NumericSat:
    restarts: int = 12
    seed: int = 0
    denominators: tuple[int, ...] = (4, 16, 64, 256, 1024, 10**4, 10**6)
    margin: float = 1e-3
    maxiter: int = 4000


@dataclass(frozen=True)
class EmitOnly:
    path: str | None = None


# ---------------------------------------------------------------------------
# compilation
# ---------------------------------------------------------------------------


def _clause_src(c: Clause) -> str:
    ops = {">": "> 0", ">=": ">= 0", "=": "== 0"}
    conj = ["(" + " and ".join(f"{a.poly.to_python()} {ops[a.rel]}" for a in d) + ")" for d in c.disjuncts]
    return " or ".join(conj) if conj else "False"


def compile_clause(c: Clause):
    return eval(f"lambda v: {_clause_src(c)}")  # noqa: S307 - source is generated above


def _penalty_src(c: Clause, margin: float) -> str:
    terms = []
    for d in c.disjuncts:
        parts = []
        for a in d:
            p = a.poly.to_python()
            if a.rel == ">":
                parts.append(f"max(0.0, {margin} - {p})")
            elif a.rel == ">=":
                parts.append(f"max(0.0, -{p})")
            else:
                parts.append(f"abs({p})")
        terms.append("(" + " + ".join(parts) + ")" if parts else "0.0")
    return "min(" + ", ".join(terms) + ")" if len(terms) > 1 else terms[0]


def compile_penalty(f: RealFormula, margin: float):
    body = " + ".join(_penalty_src(c, margin) for c in f.clauses) or "0.0"
    return eval(f"lambda v: {body}")  # noqa: S307


def _witness_ok(f: RealFormula, pts) -> bool:
    values = [c for p in pts for c in p]
    if not f.holds(values):
        return False
    if f.graph is not None:
        d = Drawing(f.graph, {v: pts[v] for v in range(f.graph.n)})
        if not validate_drawing(d, check_rotation=False):
            return False
    return True


# ---------------------------------------------------------------------------
# grid strategy
# ---------------------------------------------------------------------------


def _quarter_turn_reps(W: int) -> list[tuple[int, int]]:
    reps = []
    for x in range(W):
        for y in range(W):
            orbit = [(x, y), (W - 1 - y, x), (W - 1 - x, W - 1 - y), (y, W - 1 - x)]
            if (x, y) == min(orbit):
                reps.append((x, y))
    return reps


def _decide_grid(f: RealFormula, s: GridComplete) -> Verdict:
    K, W = f.n_points, s.width
    by_last: list[list] = [[] for _ in range(K)]
    for c in f.clauses:
        pts = c.points()
        by_last[max(pts) if pts else 0].append(compile_clause(c))
    cells = [(x, y) for x in range(W) for y in range(W)]
    first = _quarter_turn_reps(W) if f.rotation_invariant else cells
    values = [0] * (2 * K)
    nodes = 0

    def domain(p):
        if p == 0:
            return first
        if p in f.equal_choice:
            return sorted({(values[2 * q], values[2 * q + 1]) for q in f.equal_choice[p] if q < p})
        return cells

    stack = [iter(domain(0))] if K else []
    p = 0
    while stack:
        try:
            cell = next(stack[-1])
        except StopIteration:
            stack.pop()
            p -= 1
            continue
        nodes += 1
        if s.node_budget is not None and nodes > s.node_budget:
            return Verdict("unknown", scope=f"grid W={W}", diagnostics={"reason": "node budget", "nodes": nodes})
        values[2 * p], values[2 * p + 1] = cell
        if all(chk(values) for chk in by_last[p]):
            if p == K - 1:
                pts = tuple(Point(Fraction(values[2 * i]), Fraction(values[2 * i + 1])) for i in range(K))
                if _witness_ok(f, pts):
                    return Verdict("sat", pts, f"grid W={W}", {"nodes": nodes})
                continue
            p += 1
            stack.append(iter(domain(p)))
    return Verdict("unsat", scope=f"grid-restricted W={W}", diagnostics={"nodes": nodes})


# ---------------------------------------------------------------------------
# numeric strategy
# ---------------------------------------------------------------------------


@dataclass
class _Plan:
    order: list[int]
    kind: dict[int, tuple]          # point -> ("free",) | ("line", q, r) | ("meet", q, r, s, t)
    n_params: int


def _plan(f: RealFormula, rng: random.Random, tries: int = 40) -> _Plan:
    K = f.n_points
    best = None
    for attempt in range(tries):
        order = list(range(K))
        if attempt:
            rng.shuffle(order)
        pos = {p: i for i, p in enumerate(order)}
        lines: dict[int, list[tuple[int, int]]] = {p: [] for p in range(K)}
        for a, b, c in f.collinear:
            last = max((a, b, c), key=pos.__getitem__)
            others = tuple(x for x in (a, b, c) if x != last)
            lines[last].append(others)
        over = sum(max(0, len(v) - 2) for v in lines.values())
        params = sum(2 if not v else (1 if len(v) == 1 else 0) for v in lines.values())
        key = (over, -params)
        if best is None or key < best[0]:
            best = (key, order, lines)
        if over == 0 and attempt > 4:
            break
    _, order, lines = best
    kind, n = {}, 0
    for p in order:
        ls = lines[p]
        if not ls:
            kind[p] = ("free",)
            n += 2
        elif len(ls) == 1:
            kind[p] = ("line",) + ls[0]
            n += 1
        else:
            kind[p] = ("meet",) + ls[0] + ls[1]
    return _Plan(order, kind, n)


def _build(plan: _Plan, params, exact: bool):
    pts: dict[int, tuple] = {}
    i = 0
    for p in plan.order:
        k = plan.kind[p]
        if k[0] == "free":
            pts[p] = (params[i], params[i + 1])
            i += 2
        elif k[0] == "line":
            (qx, qy), (rx, ry) = pts[k[1]], pts[k[2]]
            t = params[i]
            i += 1
            pts[p] = (qx + t * (rx - qx), qy + t * (ry - qy))
        else:
            (ax, ay), (bx, by) = pts[k[1]], pts[k[2]]
            (cx, cy), (dx, dy) = pts[k[3]], pts[k[4]]
            ux, uy, wx, wy = bx - ax, by - ay, dx - cx, dy - cy
            den = ux * wy - uy * wx
            if den == 0 or (not exact and abs(den) < 1e-12):
                return None
            s = ((cx - ax) * wy - (cy - ay) * wx) / den
            pts[p] = (ax + s * ux, ay + s * uy)
    return pts


def _layout(f: RealFormula):
    """Straight-line layout respecting the rotation system, scaled into [-1, 1].

    Only for connected graphs whose rotation is a planar embedding; the
    optimiser then mostly has to repair the alignment atoms.
    """
    g = f.graph
    if g is None or g.rotation is None or g.m < 2 or g.n != f.n_points:
        return None
    if any(g.degree(v) == 0 for v in range(g.n)) or not nx.is_connected(g.to_networkx()):
        return None
    emb = nx.PlanarEmbedding()
    for v in range(g.n):
        rot = g.rotation[v]
        emb.add_half_edge_first(v, rot[0])
        for a, b in zip(rot, rot[1:]):
            emb.add_half_edge_ccw(v, b, a)
    try:
        emb.check_structure()
        pos = combinatorial_embedding_to_pos(emb)
    except nx.NetworkXException:
        return None
    probe = next((v for v in range(g.n) if g.degree(v) >= 3), None)
    if probe is not None:
        order = ccw_order(Point(*pos[probe]), {u: Point(*pos[u]) for u in g.adj[probe]})
        if not same_cyclic_order(order, g.rotation[probe]):
            pos = {v: (-x, y) for v, (x, y) in pos.items()}
    span = max(1, max(max(abs(x), abs(y)) for x, y in pos.values()))
    return {v: (x / span, y / span) for v, (x, y) in pos.items()}


def _params_from(plan: _Plan, coords) -> list[float]:
    out: list[float] = []
    for p in plan.order:
        k = plan.kind[p]
        if k[0] == "free":
            out += [coords[p][0], coords[p][1]]
        elif k[0] == "line":
            (qx, qy), (rx, ry) = coords[k[1]], coords[k[2]]
            dx, dy = rx - qx, ry - qy
            den = dx * dx + dy * dy
            out.append(((coords[p][0] - qx) * dx + (coords[p][1] - qy) * dy) / den if den else 0.5)
    return out


def _decide_numeric(f: RealFormula, s: NumericSat) -> Verdict:
    K = f.n_points
    rng = random.Random(s.seed)
    plan = _plan(f, rng)
    penalty = compile_penalty(f, s.margin)
    start = _layout(f)
    seeded = None if start is None else np.array(_params_from(plan, start))

    def objective(x):
        pts = _build(plan, list(x), exact=False)
        if pts is None:
            return 1e6
        v = [c for p in range(K) for c in pts[p]]
        return penalty(v)

    best_pen = math.inf
    for r in range(s.restarts):
        if seeded is not None and r < 2:
            # the second restart jitters the layout a little
            x0 = seeded + np.array([rng.uniform(-0.05, 0.05) * r for _ in range(plan.n_params)])
        else:
            x0 = np.array([rng.uniform(-1, 1) for _ in range(plan.n_params)])
        if plan.n_params == 0:
            res_x = x0
            pen = objective(x0)
        else:
            res = minimize(objective, x0, method="Powell", options={"maxiter": s.maxiter, "xtol": 1e-9, "ftol": 1e-12})
            res_x, pen = res.x, res.fun
            if pen > 0:
                res = minimize(objective, res_x, method="Nelder-Mead",
                               options={"maxiter": s.maxiter, "xatol": 1e-10, "fatol": 1e-14})
                if res.fun < pen:
                    res_x, pen = res.x, res.fun
        best_pen = min(best_pen, pen)
        if pen > 1e-9:
            continue
        for den in s.denominators:
            q = [Fraction(float(x)).limit_denominator(den) for x in res_x]
            pts = _build(plan, q, exact=True)
            if pts is None:
                continue
            witness = tuple(Point(Fraction(pts[p][0]), Fraction(pts[p][1])) for p in range(K))
            if _witness_ok(f, witness):
                return Verdict("sat", witness, "numeric (exact rational witness)",
                               {"restart": r, "denominator": den})
    return Verdict("unknown", scope="numeric", diagnostics={"best_penalty": best_pen, "restarts": s.restarts})


# ---------------------------------------------------------------------------


def decide(f: RealFormula, strategy=GridComplete()) -> Verdict:
    if f.immediate is not None:
        return Verdict("sat" if f.immediate else "unsat", scope="immediate")
    if isinstance(strategy, EmitOnly):
        text = emit_smt(f)
        if strategy.path:
            Path(strategy.path).write_text(text)
        return Verdict("unknown", scope="delegated", diagnostics={"bytes": len(text), "path": strategy.path})
    if f.n_points == 0:
        return Verdict("sat" if f.holds([]) else "unsat", (), "trivial")
    if isinstance(strategy, GridComplete):
        return _decide_grid(f, strategy)
    if isinstance(strategy, NumericSat):
        return _decide_numeric(f, strategy)
    raise TypeError(f"unknown strategy {strategy!r}")


def verify_witness(f: RealFormula, witness) -> bool:
    """Independent exact re-check of a claimed witness."""
    if f.immediate is not None:
        return bool(f.immediate)
    return _witness_ok(f, tuple(witness))


__all__ = ["Verdict", "GridComplete", "NumericSat", "EmitOnly", "decide", "verify_witness",
           "compile_clause", "compile_penalty"]
