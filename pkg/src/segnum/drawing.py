"""Exact straight-line drawings: validity, segments, lines, SVG."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

from .graph import PlanarGraph


class Point(NamedTuple):
    x: Fraction
    y: Fraction


def pt(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def chi(a, b, c):
    """Determinant of rows (a, 1), (b, 1), (c, 1): positive iff a, b, c turn left."""
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _dot(a, b, c):
    """(b - a) . (c - a)"""
    return (b[0] - a[0]) * (c[0] - a[0]) + (b[1] - a[1]) * (c[1] - a[1])


def on_open_segment(p, a, b) -> bool:
    """p strictly between a and b on the segment ab."""
    if chi(a, b, p) != 0 or p == a or p == b:
        return False
    return _dot(p, a, b) < 0


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    d1, d2 = _sign(chi(a, b, c)), _sign(chi(a, b, d))
    d3, d4 = _sign(chi(c, d, a)), _sign(chi(c, d, b))
    if d1 * d2 < 0 and d3 * d4 < 0:
        return True

    def on_closed(p, q, r):
        return chi(q, r, p) == 0 and min(q[0], r[0]) <= p[0] <= max(q[0], r[0]) \
            and min(q[1], r[1]) <= p[1] <= max(q[1], r[1])

    return on_closed(c, a, b) or on_closed(d, a, b) or on_closed(a, c, d) or on_closed(b, c, d)


@dataclass(frozen=True)
class Drawing:
    graph: PlanarGraph
    position: Mapping[int, Point]

    @classmethod
    def of(cls, graph: PlanarGraph, coords) -> Drawing:
        items = coords.items() if isinstance(coords, Mapping) else enumerate(coords)
        return cls(graph, {v: pt(*p) for v, p in items})

    def __getitem__(self, v: int) -> Point:
        return self.position[v]

    def map(self, f) -> Drawing:
        return Drawing(self.graph, {v: pt(*f(p)) for v, p in self.position.items()})


@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    violation: str | None = None
    detail: tuple = ()

    def __bool__(self) -> bool:
        return self.ok


class InvalidDrawingError(ValueError):
    pass


def _same_direction(v, a, b) -> bool:
    """Rays v->a and v->b point the same way."""
    return chi(v, a, b) == 0 and _dot(v, a, b) > 0


def _half(d) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2pi)
    return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1


def angular_key_cmp(d1, d2) -> int:
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return -1 if h1 < h2 else 1
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def ccw_order(center, targets: Mapping[int, Point]) -> list[int]:
    """Neighbours sorted counterclockwise by direction from ``center``."""
    from functools import cmp_to_key

    dirs = {w: (p[0] - center[0], p[1] - center[1]) for w, p in targets.items()}
    return sorted(dirs, key=cmp_to_key(lambda a, b: angular_key_cmp(dirs[a], dirs[b])))


def same_cyclic_order(a, b) -> bool:
    if len(a) != len(b):
        return False
    if len(a) <= 2:
        return sorted(a) == sorted(b)
    i = b.index(a[0]) if a[0] in b else -1
    return i >= 0 and tuple(b[i:]) + tuple(b[:i]) == tuple(a)


def validate_drawing(d: Drawing, check_rotation: bool = True) -> ValidityReport:
    g = d.graph
    missing = [v for v in range(g.n) if v not in d.position]
    if missing:
        raise InvalidDrawingError(f"missing position for vertex {g.label(missing[0])}")
    pos = d.position
    seen = {}
    for v in range(g.n):
        if pos[v] in seen:
            return ValidityReport(False, "coincident", (seen[pos[v]], v))
        seen[pos[v]] = v
    edges = g.edges
    for u, v in edges:
        a, b = pos[u], pos[v]
        for w in range(g.n):
            if w != u and w != v and on_open_segment(pos[w], a, b):
                return ValidityReport(False, "vertex-on-edge", (w, (u, v)))
    for i, (u, v) in enumerate(edges):
        for x, y in edges[i + 1:]:
            shared = {u, v} & {x, y}
            if shared:
                s = shared.pop()
                o1 = v if u == s else u
                o2 = y if x == s else x
                if _same_direction(pos[s], pos[o1], pos[o2]):
                    return ValidityReport(False, "overlap", ((u, v), (x, y)))
                continue
            a, b, c, e = pos[u], pos[v], pos[x], pos[y]
            if segments_intersect(a, b, c, e):
                collinear = chi(a, b, c) == 0 and chi(a, b, e) == 0
                return ValidityReport(False, "overlap" if collinear else "crossing", ((u, v), (x, y)))
    if check_rotation and g.rotation is not None:
        for v in range(g.n):
            want = g.rotation[v]
            if len(want) < 3:
                continue
            got = ccw_order(pos[v], {w: pos[w] for w in g.adj[v]})
            if not same_cyclic_order(tuple(want), tuple(got)):
                return ValidityReport(False, "rotation", (v,))
    return ValidityReport(True)


def _require_valid(d: Drawing) -> None:
    rep = validate_drawing(d, check_rotation=False)
    if not rep.ok:
        raise InvalidDrawingError(f"invalid drawing: {rep.violation} {rep.detail}")


def aligned_pairs_list(d: Drawing) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    g, pos = d.graph, d.position
    out = []
    for v in range(g.n):
        nb = g.adj[v]
        for i, a in enumerate(nb):
            for b in nb[i + 1:]:
                if chi(pos[a], pos[v], pos[b]) == 0 and _dot(pos[v], pos[a], pos[b]) < 0:
                    out.append((tuple(sorted((a, v))), tuple(sorted((v, b)))))
    return out


def aligned_pairs(d: Drawing, validate: bool = True) -> int:
    if validate:
        _require_valid(d)
    return len(aligned_pairs_list(d))


@dataclass(frozen=True)
class SegmentSet:
    segments: tuple[tuple[int, ...], ...]  # each a chain of vertices in order
    edge_segment: Mapping[tuple[int, int], int]

    @property
    def count(self) -> int:
        return len(self.segments)

    def __len__(self) -> int:
        return len(self.segments)


def segments_of(d: Drawing, validate: bool = True) -> SegmentSet:
    if validate:
        _require_valid(d)
    g = d.graph
    partner: dict[tuple[int, tuple[int, int]], tuple[int, int]] = {}
    for e, f in aligned_pairs_list(d):
        v = (set(e) & set(f)).pop()
        partner[(v, e)] = f
        partner[(v, f)] = e
    chains = []
    done = set()
    for e in g.edges:
        if e in done:
            continue
        # walk to one end of the chain, then collect forwards
        end, cur = e[0], e
        while (end, cur) in partner:
            nxt = partner[(end, cur)]
            end = nxt[0] if nxt[1] == end else nxt[1]
            cur = nxt
        chain = [end]
        v = end
        while True:
            done.add(cur)
            w = cur[0] if cur[1] == v else cur[1]
            chain.append(w)
            if (w, cur) not in partner:
                break
            cur = partner[(w, cur)]
            v = w
        if chain[0] > chain[-1]:
            chain.reverse()
        chains.append(tuple(chain))
    chains.sort()
    index = {}
    for i, c in enumerate(chains):
        for a, b in zip(c, c[1:]):
            index[tuple(sorted((a, b)))] = i
    return SegmentSet(tuple(chains), index)


def line_through(p, q) -> tuple[Fraction, Fraction, Fraction]:
    """Normalised (a, b, c) with a x + b y = c."""
    a = Fraction(q[1] - p[1])
    b = Fraction(p[0] - q[0])
    c = a * p[0] + b * p[1]
    s = a if a != 0 else b
    return (a / s, b / s, c / s)


def supporting_lines(d: Drawing, validate: bool = True) -> list[tuple[Fraction, Fraction, Fraction]]:
    if validate:
        _require_valid(d)
    lines = {line_through(d[u], d[v]) for u, v in d.graph.edges}
    return sorted(lines)


def segment_count(d: Drawing, validate: bool = True) -> int:
    return segments_of(d, validate).count


# ---------------------------------------------------------------------------
# random drawings for property tests
# ---------------------------------------------------------------------------


def random_grid_drawing(g: PlanarGraph, width: int = 31, rng: random.Random | None = None,
                        max_tries: int = 100_000) -> Drawing:
    """Rejection-sample distinct integer grid positions until the drawing is valid."""
    rng = rng or random.Random()
    cells = [(x, y) for x in range(width) for y in range(width)]
    if g.n > len(cells):
        raise ValueError("grid too small")
    for _ in range(max_tries):
        d = Drawing.of(g, rng.sample(cells, g.n))
        if validate_drawing(d, check_rotation=False):
            return d
    raise RuntimeError("no valid drawing found")


def random_geometric_drawing(n: int, width: int, rng: random.Random, edge_tries: int = 60,
                             keep: float = 0.8) -> Drawing:
    """Random points on a small grid joined greedily by non-conflicting segments.

    Small grids make collinear, aligned edges common, which is what the
    segment/alignment identities need to be exercised on.
    """
    cells = [(x, y) for x in range(width) for y in range(width)]
    pts = [pt(*c) for c in rng.sample(cells, n)]
    edges: list[tuple[int, int]] = []
    for _ in range(edge_tries):
        u, v = rng.sample(range(n), 2)
        e = (min(u, v), max(u, v))
        if e in edges or rng.random() > keep:
            continue
        g = PlanarGraph.from_edges(n, edges + [e])
        if validate_drawing(Drawing(g, dict(enumerate(pts))), check_rotation=False):
            edges.append(e)
    return Drawing(PlanarGraph.from_edges(n, edges), dict(enumerate(pts)))


# ---------------------------------------------------------------------------
# SVG
# ---------------------------------------------------------------------------

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
           "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")


def export_svg(d: Drawing, size: int = 400, margin: int = 20, radius: float = 4.0,
               stroke: float = 2.0, labels: bool = False) -> str:
    g = d.graph
    head = f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">\n'
    if g.n == 0:
        return head + "</svg>\n"
    xs = [p[0] for p in d.position.values()]
    ys = [p[1] for p in d.position.values()]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or Fraction(1)
    scale = Fraction(size - 2 * margin) / span
    x0, y1 = min(xs), max(ys)

    def tx(p):
        return (float((p[0] - x0) * scale) + margin, float((y1 - p[1]) * scale) + margin)

    body = []
    if g.m:
        segs = segments_of(d)
        lines = supporting_lines(d)
        line_index = {ln: i for i, ln in enumerate(lines)}
        for chain in segs.segments:
            color = PALETTE[line_index[line_through(d[chain[0]], d[chain[1]])] % len(PALETTE)]
            coords = " ".join(f"{x:.3f},{y:.3f}" for x, y in (tx(d[v]) for v in chain))
            body.append(f'  <polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{stroke}"/>\n')
    for v in range(g.n):
        x, y = tx(d[v])
        body.append(f'  <circle cx="{x:.3f}" cy="{y:.3f}" r="{radius}" fill="black"/>\n')
        if labels:
            body.append(f'  <text x="{x + 5:.3f}" y="{y - 5:.3f}" font-size="10">{g.label(v)}</text>\n')
    return head + "".join(body) + "</svg>\n"
