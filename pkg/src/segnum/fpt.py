"""Arrangement/routing solvers for list-incidence line cover, list-incidence
segment number and the natural-parameter segment number.

Every yes answer carries an exact witness drawing assembled from the
arrangement's rational lines, the placement of G_{>2} and the routings.
The witness is re-validated before it is returned.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Collection, Iterator, Mapping, Sequence

from .arrangements import (
    Arrangement,
    ArrangementCapError,
    Placement,
    Routing,
    enumerate_arrangements,
    enumerate_routings,
    feasible_collection,
    place_high_degree,
)
from .drawing import Drawing, Point, segments_of, validate_drawing
from .graph import (
    GraphError,
    PlanarGraph,
    connected_components,
    high_degree_subgraph,
    light_paths,
    norm_edge,
)

Edge = tuple[int, int]
EdgeLists = Mapping[Edge, Collection[int]]

DEFAULT_CAP = 4


class WitnessError(RuntimeError):
    """A combinatorial yes whose drawing failed exact validation (a defect)."""


# ---------------------------------------------------------------------------
# CheckRouting
# ---------------------------------------------------------------------------


def routing_table(edge_lists: Sequence[Collection[int]], labels: Sequence[int]) -> list[list[bool]]:
    """CR[i][j]: edges 1..i fit along supergaps 1..j with u_i inside S_j (0-based storage)."""
    t, h = len(edge_lists), len(labels)
    cr = [[False] * h for _ in range(t)]
    if t == 0 or h == 0:
        return cr
    cr[0][0] = labels[0] in edge_lists[0]
    for i in range(t - 1):
        for j in range(h):
            if not cr[i][j]:
                continue
            if labels[j] in edge_lists[i + 1]:
                cr[i + 1][j] = True
            if j + 1 < h and labels[j + 1] in edge_lists[i + 1]:
                cr[i + 1][j + 1] = True
    return cr


def check_routing(edge_lists: Sequence[Collection[int]], labels: Sequence[int]) -> bool:
    """Can a path whose i-th edge must lie on a line in ``edge_lists[i]`` be
    drawn along supergaps carrying ``labels``?"""
    if not edge_lists or not labels:
        return False
    return routing_table(edge_lists, labels)[-1][-1]


def routing_trace(edge_lists, labels) -> list[int] | None:
    """Supergap index (0-based) of every edge in one realisation, or None."""
    cr = routing_table(edge_lists, labels)
    t, h = len(edge_lists), len(labels)
    if not t or not h or not cr[-1][-1]:
        return None
    js = [h - 1]
    for i in range(t - 1, 0, -1):
        j = js[-1]
        if cr[i - 1][j] and labels[j] in edge_lists[i]:
            js.append(j)
        else:
            js.append(j - 1)
    js.reverse()
    return js


def brute_force_routing(edge_lists, labels) -> bool:
    """Independent check by exhaustive placement of the inner vertices.

    Cells along the routing are numbered -1 .. 2h-1: odd cells are the
    start point, the h-1 bends and the end point, even cell 2j is the
    interior of S_j.  Every bend must receive exactly one vertex and every
    edge must stay within the closure of one supergap.
    """
    t, h = len(edge_lists), len(labels)
    if not t or not h:
        return False
    inner = range(0, 2 * h - 1)
    for cells in itertools.combinations_with_replacement(inner, t - 1):
        bends = [c for c in cells if c % 2]
        if len(bends) != h - 1 or len(set(bends)) != h - 1:
            continue
        seq = (-1, *cells, 2 * h - 1)
        ok = True
        for i in range(t):
            a, b = seq[i], seq[i + 1]
            j = a // 2 if a % 2 == 0 else (a + 1) // 2
            if b not in (2 * j, 2 * j + 1) or labels[j] not in edge_lists[i]:
                ok = False
                break
        if ok:
            return True
    return False


# ---------------------------------------------------------------------------
# routed objects
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Obj:
    kind: str                       # "light" | "cycle" | "free"
    vertices: tuple[int, ...]       # for cycles: cyclic order, no repetition
    end_kind: str = ""              # light paths: "degreeOne" | "highDegree"

    def edges(self) -> list[Edge]:
        vs = self.vertices + ((self.vertices[0],) if self.kind == "cycle" else ())
        return [norm_edge(a, b) for a, b in zip(vs, vs[1:])]

    def anchored(self) -> Iterator[tuple[int, ...]]:
        """Traversals: the path itself, or every anchor/direction of a cycle."""
        if self.kind != "cycle":
            yield self.vertices
            return
        n = len(self.vertices)
        for a in range(n):
            for d in (1, -1):
                yield tuple(self.vertices[(a + d * i) % n] for i in range(n + 1))


def _lists_of(seq: Sequence[int], lists) -> list[Collection[int]]:
    return [lists[norm_edge(a, b)] for a, b in zip(seq, seq[1:])]


@dataclass
class SearchStats:
    arrangements: int = 0
    skipped_unknown: int = 0
    placements: int = 0
    collections: int = 0
    namings: int = 0


@dataclass
class FptResult:
    value: bool
    witness: Drawing | None = None
    qualified: bool = False          # an unrealised candidate arrangement was skipped
    stats: SearchStats = field(default_factory=SearchStats)
    note: str = ""

    def __bool__(self) -> bool:
        return self.value


_ARR_CACHE: dict[int, tuple[tuple[Arrangement, ...], int]] = {}


def _arrangements(k: int) -> tuple[tuple[Arrangement, ...], int]:
    if k not in _ARR_CACHE:
        all_ = list(enumerate_arrangements(k, keep_unknown=True))
        real = tuple(a for a in all_ if a.verdict == "sat")
        _ARR_CACHE[k] = (real, len(all_) - len(real))
    return _ARR_CACHE[k]


# ---------------------------------------------------------------------------
# segments induced by a collection
# ---------------------------------------------------------------------------


def _pieces(arr: Arrangement, placement: Placement, g2_edges, routings) -> list:
    """(line, lo, hi, owner) intervals in crossing-position units; floating pieces get lo=hi=None."""
    out = []
    for e in g2_edges:
        ln = placement.edge_line[e]
        a, b = (arr.position(ln, placement.at[x]) for x in e)
        out.append((ln, min(a, b), max(a, b), ("g2", e)))
    for oi, r in enumerate(routings):
        for si, s in enumerate(r.supergaps):
            if r.floating:
                out.append((s.line, None, None, ("obj", oi, si)))
                continue
            ends = []
            for p, g, side in ((s.start, s.gaps[0], -s.direction), (s.end, s.gaps[-1], s.direction)):
                if p is not None:
                    ends.append(Fraction(arr.position(s.line, p)))
                else:
                    # free end inside gap g, a quarter away from the crossing it touches
                    touch = g - 1 if side > 0 else g
                    ends.append(Fraction(touch) + Fraction(side, 4))
            out.append((s.line, min(ends), max(ends), ("obj", oi, si)))
    return out


def _segments(pieces) -> dict:
    """Map owner -> segment id, merging closed intervals on the same line that touch."""
    seg_of: dict = {}
    nxt = 0
    by_line: dict[int, list] = {}
    for ln, lo, hi, owner in pieces:
        if lo is None:
            seg_of[owner] = nxt
            nxt += 1
        else:
            by_line.setdefault(ln, []).append((lo, hi, owner))
    for ln in sorted(by_line):
        items = sorted(by_line[ln], key=lambda x: (x[0], x[1]))
        cur_hi = None
        for lo, hi, owner in items:
            if cur_hi is None or lo > cur_hi:
                nxt += 1
                cur_hi = hi
            else:
                cur_hi = max(cur_hi, hi)
            seg_of[owner] = nxt - 1
    return seg_of


# ---------------------------------------------------------------------------
# witness construction
# ---------------------------------------------------------------------------


def _anchor_point(arr: Arrangement, ln: int) -> tuple[Fraction, Fraction]:
    seq = arr.on_line[ln]
    if seq:
        return arr.coords[seq[-1]]
    a, b, c = arr.witness[ln]
    return (c / a, Fraction(0)) if a != 0 else (Fraction(0), c / b)


def _gap_frame(arr: Arrangement, ln: int, g: int):
    """Base point and step vector for gap g: points are base + s*step, s in [0, 1]."""
    seq = arr.on_line[ln]
    dx, dy = arr.direction(ln)
    if not seq:
        return _anchor_point(arr, ln), (dx, dy)
    if g == 0:
        return arr.coords[seq[0]], (-dx, -dy)
    p = arr.coords[seq[g - 1]]
    if g == len(seq):
        return p, (dx, dy)
    q = arr.coords[seq[g]]
    return p, (q[0] - p[0], q[1] - p[1])


def _at(base, step, s) -> tuple[Fraction, Fraction]:
    s = Fraction(s)
    return (base[0] + step[0] * s, base[1] + step[1] * s)


def _free_point(arr: Arrangement, ln: int, g: int, crossing: int) -> tuple[Fraction, Fraction]:
    """Point inside gap g a quarter of the way from ``crossing``."""
    base, step = _gap_frame(arr, ln, g)
    seq = arr.on_line[ln]
    if g == 0 or g == len(seq) or base == arr.coords[crossing]:
        return _at(base, step, Fraction(1, 4))
    return _at(base, step, Fraction(3, 4))


class _WitnessBuilder:
    def __init__(self, arr: Arrangement, n: int):
        self.arr = arr
        self.pos: dict[int, tuple[Fraction, Fraction]] = {}
        self.floating_slots: dict[tuple[int, int], int] = {}
        self.far_used: dict[int, Fraction] = {}
        self.n = n

    def supergap_ends(self, r: Routing, si: int, n_floating_in_gap: dict):
        arr = self.arr
        s = r.supergaps[si]
        if r.floating:
            key = (s.line, s.gaps[0])
            slot = self.floating_slots.get(key, 0)
            self.floating_slots[key] = slot + 1
            total = n_floating_in_gap[key]
            base, step = _gap_frame(arr, s.line, s.gaps[0])
            w = Fraction(2, 5) / total
            lo = Fraction(3, 10) + slot * w
            return _at(base, step, lo + w / 8), _at(base, step, lo + w * 7 / 8)
        if s.start is not None:
            a = arr.coords[s.start]
        else:
            nxt = arr.on_line[s.line][s.gaps[0]] if s.direction > 0 else arr.on_line[s.line][s.gaps[0] - 1]
            a = _free_point(arr, s.line, s.gaps[0], nxt)
        if s.end is not None:
            b = arr.coords[s.end]
        else:
            prv = arr.on_line[s.line][s.gaps[-1] - 1] if s.direction > 0 else arr.on_line[s.line][s.gaps[-1]]
            b = _free_point(arr, s.line, s.gaps[-1], prv)
        return a, b

    def route(self, seq: Sequence[int], r: Routing, js: Sequence[int], n_floating_in_gap):
        """Place the vertices of ``seq`` (u_0..u_t) along ``r`` using the edge->supergap trace ``js``."""
        ends = [self.supergap_ends(r, si, n_floating_in_gap) for si in range(r.h)]
        t = len(seq) - 1
        where: list[tuple[str, int]] = [("start", 0)]
        for i in range(1, t):
            if js[i] == js[i - 1] + 1:
                where.append(("bend", js[i - 1]))
            else:
                where.append(("in", js[i - 1]))
        where.append(("end", r.h - 1))
        inside: dict[int, list[int]] = {}
        for i, (kind, j) in enumerate(where):
            if kind == "in":
                inside.setdefault(j, []).append(i)
        closed = r.kind == "closed"
        for i, (kind, j) in enumerate(where):
            v = seq[i]
            if closed and i == t:
                continue
            if kind == "start":
                p = ends[0][0]
            elif kind in ("bend", "end"):
                p = ends[j][1]
            else:
                idx = inside[j].index(i) + 1
                a, b = ends[j]
                p = _at(a, (b[0] - a[0], b[1] - a[1]), Fraction(idx, len(inside[j]) + 1))
            if v in self.pos and self.pos[v] != p:
                raise WitnessError(f"vertex {v} placed twice")
            self.pos[v] = p

    def far_path(self, ln: int, seq: Sequence[int]):
        """Straight path on line ``ln`` beyond its last crossing."""
        base = _anchor_point(self.arr, ln)
        dx, dy = self.arr.direction(ln)
        off = self.far_used.get(ln, Fraction(2))
        for i, v in enumerate(seq):
            self.pos[v] = (base[0] + dx * (off + i), base[1] + dy * (off + i))
        self.far_used[ln] = off + len(seq) + 1

    def outside(self, paths: Sequence[Sequence[int]]):
        """Straight horizontal paths (or single vertices) beyond everything placed so far."""
        xs = [p[0] for p in self.pos.values()] + [Fraction(0)]
        ys = [p[1] for p in self.pos.values()] + [Fraction(0)]
        x0 = max(xs) + 3
        y0 = max(ys) + 3
        for row, seq in enumerate(paths):
            for i, v in enumerate(seq):
                self.pos[v] = (x0 + i, y0 + 2 * row + Fraction(1, 3))


# ---------------------------------------------------------------------------
# the engine
# ---------------------------------------------------------------------------


@dataclass
class _Problem:
    g: PlanarGraph
    k: int                                   # number of lines
    mode: str                                # "line" | "segment" | "count"
    lists: EdgeLists | None                  # None in count mode
    objects: list[_Obj]
    budget: int = 0                          # segment budget for routed parts (segment/count)
    labels: tuple[int, ...] = ()             # labels available to routed parts (segment mode)
    straight: list[tuple[tuple[int, ...], int | None]] = field(default_factory=list)
    ignored: list[tuple[tuple[int, ...], int]] = field(default_factory=list)
    isolated: list[int] = field(default_factory=list)
    verify: bool = True


def _core_parts(g: PlanarGraph):
    g2, g2map = high_degree_subgraph(g)
    inv = {v: i for i, v in enumerate(g2map)}
    try:
        lps = light_paths(g)
    except GraphError:
        lps = []
    objs = [_Obj("light", lp.vertices, lp.endpoint_kind) for lp in lps]
    return g2, g2map, inv, objs


def _object_routings(arr: Arrangement, pl: Placement, obj: _Obj, inv) -> list[Routing]:
    t = len(obj.edges())
    if obj.kind == "light":
        start = pl.at[inv[obj.vertices[0]]]
        if obj.end_kind == "highDegree":
            rs = enumerate_routings(arr, pl, start, pl.at[inv[obj.vertices[-1]]])
        else:
            rs = enumerate_routings(arr, pl, start, None, free_end=True)
    elif obj.kind == "cycle":
        rs = []
        blocked = pl.used_points | pl.covered_points
        for s in range(arr.n_crossings):
            if s in blocked:
                continue
            for r in enumerate_routings(arr, pl, s, None, closed=True):
                if min(r.bends() + (s,)) == s:
                    rs.append(r)
    else:
        rs = enumerate_routings(arr, pl, None, None, free_end=True)
    return [r for r in rs if r.h <= t]


def _traces(obj: _Obj, r: Routing, labels, lists):
    """First (traversal, trace) realising ``obj`` along ``r`` with supergap labels."""
    for seq in obj.anchored():
        el = _lists_of(seq, lists) if lists is not None else [range(-1, 10**9)] * (len(seq) - 1)
        if lists is None:
            if len(seq) - 1 >= r.h:
                js = _monotone_trace(len(seq) - 1, r.h)
                return seq, js
            continue
        js = routing_trace(el, labels)
        if js is not None:
            return seq, js
    return None


def _monotone_trace(t: int, h: int) -> list[int]:
    """With unrestricted lists: the first h-1 edges each take one supergap, the rest the last."""
    return [min(i, h - 1) for i in range(t)]


def _search(pb: _Problem) -> FptResult:
    res = FptResult(False)
    arrs, unknown = _arrangements(pb.k)
    res.qualified = unknown > 0
    res.stats.skipped_unknown = unknown
    g2, g2map, inv, _ = _core_parts(pb.g)
    g2_edges = [e for e in g2.edges]
    perms = list(itertools.permutations(range(1, pb.k + 1))) if pb.mode == "line" else []
    for arr in arrs:
        res.stats.arrangements += 1
        for pl in place_high_degree(arr, g2):
            res.stats.placements += 1
            found = _search_placement(pb, arr, pl, g2, g2map, inv, g2_edges, perms, res.stats)
            if found is not None:
                res.value = True
                res.witness = found
                return res
    return res


def _search_placement(pb, arr, pl, g2, g2map, inv, g2_edges, perms, stats):
    objs = pb.objects
    options = [_object_routings(arr, pl, o, inv) for o in objs]
    if any(not o for o in options):
        return None
    g2_orig = [(g2map[a], g2map[b]) for a, b in g2_edges]

    if pb.mode == "line":
        base_mask = [
            pi for pi, perm in enumerate(perms)
            if all(perm[pl.edge_line[e]] in pb.lists[norm_edge(*eo)] for e, eo in zip(g2_edges, g2_orig))
        ]
        if not base_mask:
            return None
        base = frozenset(base_mask)
        masks: list[list[frozenset]] = []
        for o, rs in zip(objs, options):
            row = []
            for r in rs:
                ok = frozenset(pi for pi in base
                               if _traces(o, r, [perms[pi][s.line] for s in r.supergaps], pb.lists) is not None)
                row.append(ok)
            masks.append(row)
        order = sorted(range(len(objs)), key=lambda i: len(options[i]))
        chosen: dict[int, int] = {}

        def rec(d: int, mask: frozenset, picked: list[Routing]):
            if d == len(order):
                stats.collections += 1
                pi = min(mask)
                stats.namings += 1
                return pi
            oi = order[d]
            for ri, r in enumerate(options[oi]):
                m = mask & masks[oi][ri]
                if not m:
                    continue
                if not feasible_collection(picked + [r], pl, arr):
                    continue
                chosen[oi] = ri
                got = rec(d + 1, m, picked + [r])
                if got is not None:
                    return got
                del chosen[oi]
            return None

        pi = rec(0, base, [])
        if pi is None:
            return None
        perm = perms[pi]
        routs = [options[i][chosen[i]] for i in range(len(objs))]
        traces = [_traces(o, r, [perm[s.line] for s in r.supergaps], pb.lists) for o, r in zip(objs, routs)]
        return _finish(pb, arr, pl, g2map, routs, traces, line_labels=perm)

    # segment and count modes: enumerate collections, then count segments
    order = sorted(range(len(objs)), key=lambda i: len(options[i]))
    picked: dict[int, Routing] = {}

    def collections(d: int, acc: list[Routing]):
        if d == len(order):
            yield dict(picked)
            return
        oi = order[d]
        for r in options[oi]:
            if feasible_collection(acc + [r], pl, arr):
                picked[oi] = r
                yield from collections(d + 1, acc + [r])
                del picked[oi]

    for coll in collections(0, []):
        stats.collections += 1
        routs = [coll[i] for i in range(len(objs))]
        seg_of = _segments(_pieces(arr, pl, g2_edges, routs))
        n_seg = len(set(seg_of.values()))
        if n_seg > pb.budget:
            continue
        if pb.mode == "count":
            traces = [_traces(o, r, None, None) for o, r in zip(objs, routs)]
            if any(t is None for t in traces):
                continue
            w = _finish(pb, arr, pl, g2map, routs, traces)
            if w is not None:
                return w
            continue
        seg_ids = sorted(set(seg_of.values()))
        for naming in itertools.permutations(pb.labels, len(seg_ids)):
            stats.namings += 1
            lab = dict(zip(seg_ids, naming))
            if not all(lab[seg_of[("g2", e)]] in pb.lists[norm_edge(*eo)] for e, eo in zip(g2_edges, g2_orig)):
                continue
            traces = []
            for oi, (o, r) in enumerate(zip(objs, routs)):
                labels = [lab[seg_of[("obj", oi, si)]] for si in range(r.h)]
                tr = _traces(o, r, labels, pb.lists)
                if tr is None:
                    break
                traces.append(tr)
            else:
                w = _finish(pb, arr, pl, g2map, routs, traces, seg_labels=(seg_of, lab))
                if w is not None:
                    return w
    return None


def _finish(pb: _Problem, arr, pl, g2map, routs, traces, line_labels=None, seg_labels=None):
    wb = _WitnessBuilder(arr, pb.g.n)
    for i, p in pl.at.items():
        wb.pos[g2map[i]] = arr.coords[p]
    nfl: dict = {}
    for r in routs:
        if r.floating:
            key = r.floating_gap()
            nfl[key] = nfl.get(key, 0) + 1
    for r, (seq, js) in zip(routs, traces):
        wb.route(seq, r, js, nfl)
    if line_labels is not None:
        line_of = {lab: ln for ln, lab in enumerate(line_labels)}
        for seq, lab in pb.ignored:
            wb.far_path(line_of[lab], seq)
    wb.outside([seq for seq, _ in pb.straight] + [(v,) for v in pb.isolated])
    missing = [v for v in range(pb.g.n) if v not in wb.pos]
    if missing:
        raise WitnessError(f"unplaced vertices {missing}")
    d = Drawing(pb.g, {v: Point(*wb.pos[v]) for v in range(pb.g.n)})
    if not pb.verify:
        return d
    rep = validate_drawing(d, check_rotation=False)
    if not rep:
        raise WitnessError(f"witness drawing invalid: {rep}")
    if pb.mode == "line":
        for e in pb.g.edges:
            lab = _edge_line_label(d, e, arr, line_labels)
            if lab is None or lab not in pb.lists[e]:
                raise WitnessError(f"edge {e} not on an admissible line")
    else:
        limit = pb.budget + len(pb.straight)
        ss = segments_of(d)
        if len(ss.segments) > limit:
            raise WitnessError(f"witness has {len(ss.segments)} segments, expected <= {limit}")
        if pb.mode == "segment":
            _check_segment_labels(pb, d, ss, seg_labels, arr, pl, g2map, routs, traces)
    return d


def _edge_line_label(d: Drawing, e, arr: Arrangement, line_labels):
    p, q = d.position[e[0]], d.position[e[1]]
    for ln, (a, b, c) in enumerate(arr.witness):
        if a * p.x + b * p.y == c and a * q.x + b * q.y == c:
            return line_labels[ln]
    return None


def _check_segment_labels(pb, d, ss, seg_labels, arr, pl, g2map, routs, traces):
    """Each drawn segment carries one label, distinct segments distinct labels, lists respected."""
    edge_label: dict[Edge, int] = {}
    seg_of, lab = seg_labels
    inv_map = {v: i for i, v in enumerate(g2map)}
    for e in pb.g.edges:
        if e[0] in inv_map and e[1] in inv_map:
            e2 = norm_edge(inv_map[e[0]], inv_map[e[1]])
            if e2 in pl.edge_line:
                edge_label[e] = lab[seg_of[("g2", e2)]]
    for oi, (r, (seq, js)) in enumerate(zip(routs, traces)):
        for i, (a, b) in enumerate(zip(seq, seq[1:])):
            edge_label[norm_edge(a, b)] = lab[seg_of[("obj", oi, js[i])]]
    for seq, label in pb.straight:
        for a, b in zip(seq, seq[1:]):
            edge_label[norm_edge(a, b)] = label
    used = {}
    members: dict[int, list[Edge]] = {}
    for e, si in ss.edge_segment.items():
        members.setdefault(si, []).append(e)
    for si, chain in sorted(members.items()):
        labs = {edge_label[e] for e in chain}
        if len(labs) != 1:
            raise WitnessError(f"segment {chain} carries labels {labs}")
        (x,) = labs
        if x in used:
            raise WitnessError(f"label {x} on two segments")
        used[x] = si
    for e, x in edge_label.items():
        if x not in pb.lists[e]:
            raise WitnessError(f"edge {e} label {x} not in its list")


# ---------------------------------------------------------------------------
# component handling and public solvers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Split:
    core: list[int]                   # vertices of components with a vertex of degree > 2
    cycles: list[tuple[int, ...]]
    paths: list[tuple[int, ...]]      # path components with at least one edge
    isolated: list[int]


def _split(g: PlanarGraph) -> _Split:
    core, cycles, paths, iso = [], [], [], []
    for comp in connected_components(g):
        if len(comp) == 1:
            iso.append(comp[0])
            continue
        degs = [g.degree(v) for v in comp]
        if max(degs) > 2:
            core.extend(comp)
        elif min(degs) == 2:
            cycles.append(_walk_cycle(g, comp))
        else:
            paths.append(_walk_path(g, comp))
    return _Split(sorted(core), cycles, paths, iso)


def _walk_path(g: PlanarGraph, comp) -> tuple[int, ...]:
    start = min(v for v in comp if g.degree(v) <= 1)
    seq = [start]
    prev = None
    while True:
        nxt = [w for w in g.adj[seq[-1]] if w != prev]
        if not nxt:
            break
        prev = seq[-1]
        seq.append(nxt[0])
    return tuple(seq)


def _walk_cycle(g: PlanarGraph, comp) -> tuple[int, ...]:
    start = min(comp)
    seq = [start, min(g.adj[start])]
    while True:
        a, b = g.adj[seq[-1]]
        nxt = a if b == seq[-2] else b
        if nxt == start:
            break
        seq.append(nxt)
    return tuple(seq)


def _check_lists(g: PlanarGraph, k: int, lists) -> dict[Edge, frozenset[int]]:
    out = {}
    for e in g.edges:
        if e not in lists:
            raise ValueError(f"edge {e} has no list")
        L = frozenset(int(x) for x in lists[e])
        if not L or not all(1 <= x <= k for x in L):
            raise ValueError(f"list of edge {e} must be a non-empty subset of 1..{k}")
        out[e] = L
    return out


def _cap(k: int, cap: int):
    if k > cap:
        raise ArrangementCapError(f"k={k} exceeds the configured cap {cap}")


def full_lists(g: PlanarGraph, k: int) -> dict[Edge, frozenset[int]]:
    return {e: frozenset(range(1, k + 1)) for e in g.edges}


def list_line_cover(g: PlanarGraph, k: int, lists: EdgeLists, *, cap: int = DEFAULT_CAP,
                    verify: bool = True) -> FptResult:
    """List-incidence line cover with path and cycle components handled."""
    lists = _check_lists(g, k, lists)
    if k < 1:
        return FptResult(g.m == 0)
    _cap(k, cap)
    sp = _split(g)
    objs = [_Obj("cycle", c) for c in sp.cycles]
    ignored = []
    for p in sp.paths:
        common = frozenset.intersection(*(lists[e] for e in _Obj("free", p).edges()))
        if common:
            ignored.append((p, min(common)))
        else:
            objs.append(_Obj("free", p))
    _, _, _, light = _core_parts(g)
    pb = _Problem(g, k, "line", lists, light + objs, ignored=ignored, isolated=sp.isolated, verify=verify)
    return _search(pb)


def list_segment_number(g: PlanarGraph, k: int, lists: EdgeLists, *, cap: int = DEFAULT_CAP,
                        universal: bool = True, verify: bool = True) -> FptResult:
    """List-incidence segment number.

    Path components with a universal index are either drawn as one
    segment with one of those indices (removed from every other list) or
    routed with bends.  ``universal=False`` always routes them.
    """
    lists = _check_lists(g, k, lists)
    if k < 1:
        return FptResult(g.m == 0)
    _cap(k, cap)
    sp = _split(g)
    _, _, _, light = _core_parts(g)
    cycles = [_Obj("cycle", c) for c in sp.cycles]
    paths = sp.paths
    total = FptResult(False)

    def branch(i: int, reserved: tuple[int, ...], straight: list, routed: list[_Obj]):
        if i == len(paths):
            free_labels = tuple(x for x in range(1, k + 1) if x not in reserved)
            cur = {e: L - set(reserved) for e, L in lists.items()}
            straight_edges = {e for seq, _ in straight for e in _Obj("free", seq).edges()}
            for e in straight_edges:
                cur[e] = lists[e]
            if any(not cur[e] for e in cur if e not in straight_edges):
                return None
            pb = _Problem(g, k, "segment", cur, light + cycles + routed, budget=k - len(reserved),
                          labels=free_labels, straight=list(straight), isolated=sp.isolated, verify=verify)
            r = _search(pb)
            total.qualified |= r.qualified
            return r if r.value else None
        p = paths[i]
        common = frozenset.intersection(*(lists[e] for e in _Obj("free", p).edges()))
        if universal:
            for x in sorted(common):
                if x in reserved:
                    continue
                r = branch(i + 1, reserved + (x,), straight + [(p, x)], routed)
                if r is not None:
                    return r
        return branch(i + 1, reserved, straight, routed + [_Obj("free", p)])

    if len(paths) > k:
        return total
    r = branch(0, (), [], [])
    if r is not None:
        r.qualified = r.qualified or total.qualified
        return r
    return total


# ---------------------------------------------------------------------------
# natural parameter
# ---------------------------------------------------------------------------


@dataclass
class Reduction:
    graph: PlanarGraph
    to_original: list[int]
    removed: list[tuple[int, int, tuple[int, ...]]]   # (kept u, kept w, original vertices between them)


def reduce_long_paths(g: PlanarGraph, limit: int) -> Reduction:
    """Shorten maximal chains of degree-2 vertices (and cycle components) to ``limit`` edges.

    Chains keep at least 2 edges, closed chains at least 3, so the result stays simple.
    """
    keep = set(range(g.n))
    new_edges: list[tuple[int, int]] = []
    removed = []
    done_edges: set[Edge] = set()
    sp = _split(g)
    chains: list[tuple[tuple[int, ...], bool]] = []
    for c in sp.cycles:
        chains.append((c + (c[0],), True))
    core = set(sp.core)
    for lp in (light_paths(g) if core else []):
        closed = lp.vertices[0] == lp.vertices[-1]
        chains.append((lp.vertices, closed))
    chain_edges: set[Edge] = set()
    for seq, closed in chains:
        t = len(seq) - 1
        es = [norm_edge(a, b) for a, b in zip(seq, seq[1:])]
        chain_edges.update(es)
        target = max(limit, 3 if closed else 2)
        if t <= target:
            new_edges.extend(es)
            continue
        kept = list(seq[:target]) + [seq[-1]]
        drop = seq[target:-1]
        keep.difference_update(drop)
        new_edges.extend(norm_edge(a, b) for a, b in zip(kept, kept[1:]))
        removed.append((seq[target - 1], seq[-1], tuple(drop)))
    for e in g.edges:
        if e not in chain_edges and e not in done_edges:
            new_edges.append(e)
    order = sorted(keep)
    idx = {v: i for i, v in enumerate(order)}
    h = PlanarGraph.from_edges(len(order), sorted({norm_edge(idx[a], idx[b]) for a, b in new_edges}))
    return Reduction(h, order, removed)


def _expand_witness(g: PlanarGraph, red: Reduction, d: Drawing) -> Drawing:
    pos = {red.to_original[v]: d.position[v] for v in range(red.graph.n)}
    for u, w, mid in red.removed:
        a, b = pos[u], pos[w]
        n = len(mid) + 1
        for i, v in enumerate(mid, 1):
            pos[v] = Point(a.x + (b.x - a.x) * Fraction(i, n), a.y + (b.y - a.y) * Fraction(i, n))
    return Drawing(g, pos)


def segment_number_natural(g: PlanarGraph, k: int, *, cap: int = DEFAULT_CAP, verify: bool = True) -> FptResult:
    """Is seg(g) <= k?"""
    sp = _split(g)
    p = len(sp.paths)
    kp = k - p
    rest = sp.core + [v for c in sp.cycles for v in c]
    if not rest:
        if kp < 0:
            return FptResult(False, note="path components alone exceed k")
        w = _straight_only(g, sp)
        return FptResult(True, w)
    if kp <= 0:
        return FptResult(False)
    n_high = sum(1 for v in sp.core if g.degree(v) > 2)
    if n_high > math.comb(kp, 2):
        return FptResult(False, note="too many vertices of degree > 2 for the crossings")
    _cap(kp, cap)
    red = reduce_long_paths(g, math.comb(kp, 2))
    h = red.graph
    hs = _split(h)
    _, _, _, light = _core_parts(h)
    objs = light + [_Obj("cycle", c) for c in hs.cycles]
    pb = _Problem(h, kp, "count", None, objs, budget=kp,
                  straight=[(pp, None) for pp in hs.paths], isolated=hs.isolated, verify=verify)
    res = _search(pb)
    if res.value and res.witness is not None:
        w = _expand_witness(g, red, res.witness)
        if verify:
            if not validate_drawing(w, check_rotation=False):
                raise WitnessError("expanded witness invalid")
            if len(segments_of(w).segments) > k:
                raise WitnessError("expanded witness exceeds k segments")
        res.witness = w
    return res


def _straight_only(g: PlanarGraph, sp: _Split) -> Drawing:
    pos = {}
    for row, seq in enumerate(sp.paths):
        for i, v in enumerate(seq):
            pos[v] = Point(Fraction(i), Fraction(2 * row))
    for j, v in enumerate(sp.isolated):
        pos[v] = Point(Fraction(-1 - j), Fraction(-1))
    return Drawing(g, pos)


def segment_number(g: PlanarGraph, *, cap: int = DEFAULT_CAP) -> tuple[int, FptResult]:
    """Smallest k with seg(g) <= k, searching upward from a trivial lower bound."""
    sp = _split(g)
    k = len(sp.paths) + (1 if (sp.core or sp.cycles) else 0)
    while True:
        r = segment_number_natural(g, k, cap=cap)
        if r.value:
            return k, r
        k += 1


def line_cover_number(g: PlanarGraph, *, cap: int = DEFAULT_CAP) -> tuple[int, FptResult]:
    if g.m == 0:
        return 0, FptResult(True)
    k = 1
    while True:
        r = list_line_cover(g, k, full_lists(g, k), cap=cap)
        if r.value:
            return k, r
        k += 1


def segment_number_by_lin(g: PlanarGraph, *, cap: int = DEFAULT_CAP) -> tuple[int, dict]:
    """seg(g) through the line cover number: seg(G') <= lin(G')^2 once path components are gone."""
    sp = _split(g)
    p = len(sp.paths)
    rest = sorted(sp.core + [v for c in sp.cycles for v in c])
    if not rest:
        return p, {"lin": 1 if p else 0, "p": p, "seg_rest": 0}
    sub, _ = g.induced(rest)
    lin, _ = line_cover_number(sub, cap=cap)
    seg_rest = None
    for k in range(lin, lin * lin + 1):
        if segment_number_natural(sub, k, cap=cap).value:
            seg_rest = k
            break
    if seg_rest is None:
        raise AssertionError("seg exceeded lin^2, contradicting the line/segment bound")
    return seg_rest + p, {"lin": lin, "p": p, "seg_rest": seg_rest}


__all__ = [
    "check_routing", "routing_table", "routing_trace", "brute_force_routing",
    "list_line_cover", "list_segment_number", "segment_number_natural", "segment_number",
    "segment_number_by_lin", "line_cover_number", "reduce_long_paths", "full_lists",
    "FptResult", "SearchStats", "WitnessError",
]
