"""Exhaustive grid oracle for segment number, line cover number and the
list-incidence variants on tiny graphs.

Every vertex is placed on a distinct point of ``{0..W-1}^2``.  The search is
a depth-first backtracking over vertices with incremental validity checks.
Optima are found by asking a sequence of feasibility questions ("is there a
valid grid drawing with at least T aligned pairs?"), each pruned with a
per-vertex alignment bound.  The kernel runs under numba.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .drawing import Drawing, pt
from .graph import PlanarGraph

MAX_VERTICES = 8


class OracleError(ValueError):
    pass


class NoGridDrawing(OracleError):
    """No valid drawing of the graph fits the grid at all."""


class BudgetExceeded(OracleError):
    """A valid drawing exists but none meets the requested budget."""


@dataclass(frozen=True)
class OracleConfig:
    grid_width: int = 5
    max_vertices: int = MAX_VERTICES
    budget: int | None = None
    symmetry: bool = True

    def __post_init__(self):
        if self.grid_width < 2:
            raise OracleError("grid width must be at least 2")
        if self.max_vertices > MAX_VERTICES:
            raise OracleError(f"max_vertices is capped at {MAX_VERTICES}")


@dataclass(frozen=True)
class OracleResult:
    value: int
    witness: Drawing
    grid_width: int


# ---------------------------------------------------------------------------
# numba kernel
# ---------------------------------------------------------------------------

MODE_ALIGN = 0   # need at least `target` aligned pairs
MODE_LINES = 1   # need at most `target` supporting lines
MODE_LIST = 2    # need a labelling of segments/lines respecting edge lists


@njit(cache=True)
def _chi(ax, ay, bx, by, cx, cy):
    return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)


@njit(cache=True)
def _dot(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (bx - ox) + (ay - oy) * (by - oy)


@njit(cache=True)
def _on_open(px, py, ax, ay, bx, by):
    if _chi(ax, ay, bx, by, px, py) != 0:
        return False
    return _dot(px, py, ax, ay, bx, by) < 0


@njit(cache=True)
def _sgn(x):
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


@njit(cache=True)
def _on_closed(px, py, ax, ay, bx, by):
    if _chi(ax, ay, bx, by, px, py) != 0:
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


@njit(cache=True)
def _intersect(ax, ay, bx, by, cx, cy, dx, dy):
    d1 = _sgn(_chi(ax, ay, bx, by, cx, cy))
    d2 = _sgn(_chi(ax, ay, bx, by, dx, dy))
    d3 = _sgn(_chi(cx, cy, dx, dy, ax, ay))
    d4 = _sgn(_chi(cx, cy, dx, dy, bx, by))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True
    return (_on_closed(cx, cy, ax, ay, bx, by) or _on_closed(dx, dy, ax, ay, bx, by)
            or _on_closed(ax, ay, cx, cy, dx, dy) or _on_closed(bx, by, cx, cy, dx, dy))


@njit(cache=True)
def _gcd(a, b):
    a = abs(a)
    b = abs(b)
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _line(ax, ay, bx, by):
    a = by - ay
    b = ax - bx
    c = a * ax + b * ay
    g = _gcd(_gcd(a, b), c)
    a //= g
    b //= g
    c //= g
    if a < 0 or (a == 0 and b < 0):
        a, b, c = -a, -b, -c
    return a, b, c


@njit(cache=True)
def _labelling_ok(n, m, eu, ev, px, py, edge_id, list_mask, k, by_segment):
    # group edges into segments (union of aligned pairs) or lines
    parent = np.arange(m)
    for i in range(m):
        for j in range(i + 1, m):
            same = False
            if by_segment:
                s = -1
                if eu[i] == eu[j] or eu[i] == ev[j]:
                    s = eu[i]
                elif ev[i] == eu[j] or ev[i] == ev[j]:
                    s = ev[i]
                if s >= 0:
                    oi = ev[i] if eu[i] == s else eu[i]
                    oj = ev[j] if eu[j] == s else eu[j]
                    if _chi(px[oi], py[oi], px[s], py[s], px[oj], py[oj]) == 0 and \
                            _dot(px[s], py[s], px[oi], py[oi], px[oj], py[oj]) < 0:
                        same = True
            else:
                a1, b1, c1 = _line(px[eu[i]], py[eu[i]], px[ev[i]], py[ev[i]])
                a2, b2, c2 = _line(px[eu[j]], py[eu[j]], px[ev[j]], py[ev[j]])
                same = a1 == a2 and b1 == b2 and c1 == c2
            if same:
                ri = i
                while parent[ri] != ri:
                    ri = parent[ri]
                rj = j
                while parent[rj] != rj:
                    rj = parent[rj]
                if ri != rj:
                    parent[rj] = ri
    full = (1 << k) - 1
    allowed = np.full(m, full, dtype=np.int64)
    is_root = np.zeros(m, dtype=np.bool_)
    for i in range(m):
        r = i
        while parent[r] != r:
            r = parent[r]
        is_root[r] = True
        allowed[r] &= list_mask[edge_id[eu[i], ev[i]]]
    groups = 0
    for i in range(m):
        if is_root[i]:
            groups += 1
    if groups > k:
        return False
    reach = np.zeros(1 << k, dtype=np.bool_)
    reach[0] = True
    for i in range(m):
        if not is_root[i]:
            continue
        nxt = np.zeros(1 << k, dtype=np.bool_)
        for used in range(1 << k):
            if not reach[used]:
                continue
            free = allowed[i] & ~used
            for lab in range(k):
                if free & (1 << lab):
                    nxt[used | (1 << lab)] = True
        reach = nxt
    for used in range(1 << k):
        if reach[used]:
            return True
    return False


@njit(cache=True)
def _search(n, order, nbr, deg, cx, cy, first_cands, second_mask, twin_prev,
            mode, target, edge_id, list_mask, k, by_segment, out_cell):
    ncell = cx.shape[0]
    m_total = 0
    for v in range(n):
        m_total += deg[v]
    m_total //= 2
    cell = np.full(n, -1, dtype=np.int64)
    px = np.zeros(n, dtype=np.int64)
    py = np.zeros(n, dtype=np.int64)
    occupied = np.zeros(ncell, dtype=np.bool_)
    eu = np.zeros(max(m_total, 1), dtype=np.int64)
    ev = np.zeros(max(m_total, 1), dtype=np.int64)
    ecount = 0
    level_e = np.zeros(n + 1, dtype=np.int64)
    placed_e = np.zeros(n, dtype=np.int64)
    aligned_at = np.zeros(n, dtype=np.int64)
    al_stack = np.zeros(2 * max(m_total, 1) + 1, dtype=np.int64)
    al_top = 0
    level_al = np.zeros(n + 1, dtype=np.int64)
    aligned_total = 0
    # lines bookkeeping
    la = np.zeros(max(m_total, 1), dtype=np.int64)
    lb = np.zeros(max(m_total, 1), dtype=np.int64)
    lc = np.zeros(max(m_total, 1), dtype=np.int64)
    lcount = np.zeros(max(m_total, 1), dtype=np.int64)
    nlines_slots = 0
    distinct = 0
    e_line = np.zeros(max(m_total, 1), dtype=np.int64)

    ptr = np.zeros(n + 1, dtype=np.int64)
    i = 0
    ptr[0] = 0
    nodes = 0
    while i >= 0:
        v = order[i]
        limit = first_cands.shape[0] if i == 0 else ncell
        advanced = False
        while True:
            # undo the previous placement at this level, if any
            if cell[v] >= 0:
                while ecount > level_e[i]:
                    ecount -= 1
                    a = eu[ecount]
                    b = ev[ecount]
                    placed_e[a] -= 1
                    placed_e[b] -= 1
                    li = e_line[ecount]
                    lcount[li] -= 1
                    if lcount[li] == 0:
                        distinct -= 1
                        while nlines_slots > 0 and lcount[nlines_slots - 1] == 0:
                            nlines_slots -= 1
                while al_top > level_al[i]:
                    al_top -= 1
                    aligned_at[al_stack[al_top]] -= 1
                    aligned_total -= 1
                occupied[cell[v]] = False
                cell[v] = -1
            if ptr[i] >= limit:
                break
            j = ptr[i]
            ptr[i] += 1
            c = first_cands[j] if i == 0 else j
            if occupied[c]:
                continue
            if i == 1 and not second_mask[c]:
                continue
            if twin_prev[i] >= 0 and c <= cell[order[twin_prev[i]]]:
                continue
            x = cx[c]
            y = cy[c]
            ok = True
            for e in range(ecount):
                if _on_open(x, y, px[eu[e]], py[eu[e]], px[ev[e]], py[ev[e]]):
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            level_e[i] = ecount
            level_al[i] = al_top
            base = ecount
            for t in range(deg[v]):
                u = nbr[v, t]
                if cell[u] < 0:
                    continue
                ux = px[u]
                uy = py[u]
                for w in range(n):
                    if w != u and w != v and cell[w] >= 0:
                        if _on_open(px[w], py[w], ux, uy, x, y):
                            ok = False
                            break
                if not ok:
                    break
                for e in range(base):
                    a = eu[e]
                    b = ev[e]
                    if a == u or b == u:
                        o = b if a == u else a
                        if _chi(ux, uy, x, y, px[o], py[o]) == 0 and _dot(ux, uy, x, y, px[o], py[o]) > 0:
                            ok = False
                            break
                    elif _intersect(ux, uy, x, y, px[a], py[a], px[b], py[b]):
                        ok = False
                        break
                if not ok:
                    break
                for e in range(base, ecount):
                    o = eu[e]
                    if _chi(x, y, ux, uy, px[o], py[o]) == 0 and _dot(x, y, ux, uy, px[o], py[o]) > 0:
                        ok = False
                        break
                if not ok:
                    break
                eu[ecount] = u
                ev[ecount] = v
                ecount += 1
            if not ok:
                ecount = base
                continue
            # commit
            cell[v] = c
            px[v] = x
            py[v] = y
            occupied[c] = True
            for e in range(base, ecount):
                u = eu[e]
                placed_e[u] += 1
                placed_e[v] += 1
                # alignment at u with earlier edges there
                for f in range(e):
                    if f >= base:
                        break
                    a = eu[f]
                    b = ev[f]
                    if a == u or b == u:
                        o = b if a == u else a
                        if _chi(x, y, px[u], py[u], px[o], py[o]) == 0 and _dot(px[u], py[u], x, y, px[o], py[o]) < 0:
                            al_stack[al_top] = u
                            al_top += 1
                            aligned_at[u] += 1
                            aligned_total += 1
                # alignment at v among new edges
                for f in range(base, e):
                    o = eu[f]
                    if _chi(px[u], py[u], x, y, px[o], py[o]) == 0 and _dot(x, y, px[u], py[u], px[o], py[o]) < 0:
                        al_stack[al_top] = v
                        al_top += 1
                        aligned_at[v] += 1
                        aligned_total += 1
                # supporting line
                A, B, C = _line(px[u], py[u], x, y)
                slot = -1
                for s in range(nlines_slots):
                    if la[s] == A and lb[s] == B and lc[s] == C:
                        slot = s
                        break
                if slot < 0:
                    slot = nlines_slots
                    la[slot] = A
                    lb[slot] = B
                    lc[slot] = C
                    lcount[slot] = 0
                    nlines_slots += 1
                if lcount[slot] == 0:
                    distinct += 1
                lcount[slot] += 1
                e_line[e] = slot
            prune = False
            if mode == MODE_ALIGN:
                pot = 0
                for w in range(n):
                    q = deg[w] - placed_e[w]
                    p = placed_e[w] - 2 * aligned_at[w]
                    h = (p + q) // 2
                    pot += q if q < h else h
                if aligned_total + pot < target:
                    prune = True
            elif mode == MODE_LINES:
                if distinct > target:
                    prune = True
            else:
                if distinct > k:
                    prune = True
            if prune:
                continue
            if i == n - 1:
                good = True
                if mode == MODE_LIST:
                    good = _labelling_ok(n, ecount, eu, ev, px, py, edge_id, list_mask, k, by_segment)
                if good:
                    for w in range(n):
                        out_cell[w] = cell[w]
                    return True, nodes
                continue
            advanced = True
            break
        if advanced:
            i += 1
            ptr[i] = 0
        else:
            ptr[i] = 0
            i -= 1
    return False, nodes


# ---------------------------------------------------------------------------
# python driver
# ---------------------------------------------------------------------------


def _dihedral(W: int):
    m = W - 1
    return [
        lambda x, y: (x, y), lambda x, y: (m - x, y), lambda x, y: (x, m - y), lambda x, y: (m - x, m - y),
        lambda x, y: (y, x), lambda x, y: (m - y, x), lambda x, y: (y, m - x), lambda x, y: (m - y, m - x),
    ]


def vertex_order(g: PlanarGraph) -> list[int]:
    if g.n == 0:
        return []
    order = [max(range(g.n), key=lambda v: (g.degree(v), -v))]
    placed = set(order)
    while len(order) < g.n:
        best = max((v for v in range(g.n) if v not in placed),
                   key=lambda v: (sum(w in placed for w in g.adj[v]), g.degree(v), -v))
        order.append(best)
        placed.add(best)
    return order


def _twins(g: PlanarGraph, order: list[int]) -> np.ndarray:
    """twin_prev[i] = order index of the previous interchangeable vertex."""
    twin_prev = np.full(g.n, -1, dtype=np.int64)
    groups: dict[tuple, list[int]] = {}
    for i, v in enumerate(order):
        if i < 2:
            continue
        # false twins share open neighbourhoods, true twins share closed ones
        open_key = ("open", frozenset(g.adj[v]))
        closed_key = ("closed", frozenset(g.adj[v]) | {v})
        for kk in (open_key, closed_key):
            members = groups.setdefault(kk, [])
            if members and twin_prev[i] < 0:
                prev = members[-1]
                if kk[0] == "open" or g.has_edge(order[prev], v):
                    twin_prev[i] = prev
            members.append(i)
    return twin_prev


def _prepare(g: PlanarGraph, cfg: OracleConfig):
    if g.n > cfg.max_vertices:
        raise OracleError(f"oracle limited to {cfg.max_vertices} vertices (graph has {g.n})")
    W = cfg.grid_width
    if g.n > W * W:
        raise NoGridDrawing("more vertices than grid points")
    order = vertex_order(g)
    cells = [(x, y) for x in range(W) for y in range(W)]
    cx = np.array([c[0] for c in cells], dtype=np.int64)
    cy = np.array([c[1] for c in cells], dtype=np.int64)
    maxdeg = max([g.degree(v) for v in range(g.n)] + [1])
    nbr = np.zeros((g.n, maxdeg), dtype=np.int64)
    deg = np.zeros(g.n, dtype=np.int64)
    for v in range(g.n):
        deg[v] = g.degree(v)
        for t, w in enumerate(g.adj[v]):
            nbr[v, t] = w
    group = _dihedral(W)
    idx = {c: i for i, c in enumerate(cells)}
    if cfg.symmetry:
        firsts = []
        stabs = {}
        for c in cells:
            images = [idx[f(*c)] for f in group]
            if idx[c] == min(images):
                firsts.append(idx[c])
                stabs[idx[c]] = [f for f in group if f(*c) == c]
        twin_prev = _twins(g, order)
    else:
        firsts = list(range(len(cells)))
        stabs = {i: [group[0]] for i in firsts}
        twin_prev = np.full(g.n, -1, dtype=np.int64)
    second = {}
    for f0, stab in stabs.items():
        mask = np.zeros(len(cells), dtype=np.bool_)
        for c in cells:
            mask[idx[c]] = idx[c] == min(idx[f(*c)] for f in stab)
        second[f0] = mask
    edge_id = np.full((g.n, g.n), -1, dtype=np.int64)
    for e, (u, v) in enumerate(g.edges):
        edge_id[u, v] = edge_id[v, u] = e
    return order, cells, cx, cy, nbr, deg, firsts, second, twin_prev, edge_id


def _run(g: PlanarGraph, cfg: OracleConfig, mode: int, target: int,
         list_mask=None, k: int = 0, by_segment: bool = False):
    order, cells, cx, cy, nbr, deg, firsts, second, twin_prev, edge_id = _prepare(g, cfg)
    if g.n == 0:
        return Drawing(g, {}), 0
    masks = np.zeros(max(g.m, 1), dtype=np.int64) if list_mask is None else list_mask
    out = np.full(g.n, -1, dtype=np.int64)
    order_arr = np.array(order, dtype=np.int64)
    total_nodes = 0
    for f in ([f] for f in firsts):
        found, nodes = _search(g.n, order_arr, nbr, deg, cx, cy, np.array(f, dtype=np.int64),
                               second[f[0]], twin_prev, mode, target, edge_id, masks, k, by_segment, out)
        total_nodes += nodes
        if found:
            coords = {v: pt(*cells[out[v]]) for v in range(g.n)}
            return Drawing(g, coords), total_nodes
    return None, total_nodes


def _max_alignment_bound(g: PlanarGraph) -> int:
    return sum(g.degree(v) // 2 for v in range(g.n))


def oracle_seg(g: PlanarGraph, cfg: OracleConfig = OracleConfig()) -> OracleResult:
    """Minimum number of segments over all valid drawings on the grid."""
    from .drawing import segment_count

    if g.m == 0:
        return OracleResult(0, Drawing(g, {v: pt(*divmod(v, cfg.grid_width)) for v in range(g.n)}), cfg.grid_width)
    exists, _ = _run(g, cfg, MODE_ALIGN, 0)
    if exists is None:
        raise NoGridDrawing(f"no valid drawing on the {cfg.grid_width}x{cfg.grid_width} grid")
    floor_target = 0 if cfg.budget is None else g.m - cfg.budget
    for target in range(_max_alignment_bound(g), max(floor_target, 0) - 1, -1):
        if target == 0:
            witness = exists
        else:
            witness, _ = _run(g, cfg, MODE_ALIGN, target)
        if witness is not None:
            value = segment_count(witness)
            if cfg.budget is not None and value > cfg.budget:
                break
            return OracleResult(value, witness, cfg.grid_width)
    raise BudgetExceeded(f"no grid drawing with at most {cfg.budget} segments")


def oracle_lin(g: PlanarGraph, cfg: OracleConfig = OracleConfig()) -> OracleResult:
    """Minimum number of supporting lines over all valid drawings on the grid."""
    from .drawing import supporting_lines

    if g.m == 0:
        return OracleResult(0, Drawing(g, {v: pt(*divmod(v, cfg.grid_width)) for v in range(g.n)}), cfg.grid_width)
    exists, _ = _run(g, cfg, MODE_ALIGN, 0)
    if exists is None:
        raise NoGridDrawing(f"no valid drawing on the {cfg.grid_width}x{cfg.grid_width} grid")
    top = g.m if cfg.budget is None else min(cfg.budget, g.m)
    for target in range(1, top + 1):
        witness, _ = _run(g, cfg, MODE_LINES, target)
        if witness is not None:
            return OracleResult(len(supporting_lines(witness)), witness, cfg.grid_width)
    raise BudgetExceeded(f"no grid drawing with at most {cfg.budget} lines")


def oracle_list_incidence(g: PlanarGraph, lists, k: int, cfg: OracleConfig = OracleConfig(),
                          mode: str = "segment") -> tuple[bool, Drawing | None]:
    """Is there a grid drawing whose segments (or lines) can be labelled
    injectively with 1..k so that every edge carries a label from its list?"""
    if mode not in ("segment", "line"):
        raise ValueError("mode must be 'segment' or 'line'")
    if k > 12:
        raise OracleError("k too large for the labelling table")
    masks = np.zeros(max(g.m, 1), dtype=np.int64)
    for e, (u, v) in enumerate(g.edges):
        lst = lists[(u, v)]
        if any(not 1 <= x <= k for x in lst):
            raise OracleError("list entries must lie in 1..k")
        masks[e] = sum(1 << (x - 1) for x in lst)
    if g.m == 0:
        return True, Drawing(g, {v: pt(*divmod(v, cfg.grid_width)) for v in range(g.n)})
    witness, _ = _run_list(g, cfg, masks, k, mode == "segment")
    return witness is not None, witness


def _run_list(g, cfg, masks, k, by_segment):
    order, cells, cx, cy, nbr, deg, firsts, second, twin_prev, edge_id = _prepare(g, cfg)
    # labels distinguish otherwise interchangeable vertices
    twin_prev = np.full(g.n, -1, dtype=np.int64)
    out = np.full(g.n, -1, dtype=np.int64)
    order_arr = np.array(order, dtype=np.int64)
    nodes_total = 0
    for f in firsts:
        found, nodes = _search(g.n, order_arr, nbr, deg, cx, cy, np.array([f], dtype=np.int64),
                               second[f], twin_prev, MODE_LIST, 0, edge_id, masks, k, by_segment, out)
        nodes_total += nodes
        if found:
            return Drawing(g, {v: pt(*cells[out[v]]) for v in range(g.n)}), nodes_total
    return None, nodes_total


def count_aligned_upper_bound(g: PlanarGraph) -> int:
    return _max_alignment_bound(g)


__all__ = [
    "OracleConfig", "OracleResult", "OracleError", "NoGridDrawing", "BudgetExceeded",
    "oracle_seg", "oracle_lin", "oracle_list_incidence", "vertex_order",
]
