"""Segment numbers and certificate drawings for bananas, banana paths,
banana trees and banana cycles.

Vertex numbering of the expanded graphs: covering vertices come first
(tree vertices ``0..n-1``), then the independent vertices of each banana in
the order the bananas are listed.

Counting follows the aligned-pair accounting: every banana contributes one
alignment at an independent vertex, every inner covering vertex contributes a
maximum number of pairs of edges from different bananas, and each banana may
add pairs of its own edges at one of its two covering vertices.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .drawing import Drawing, Point, pt, segment_count, validate_drawing
from .graph import PlanarGraph


class BananaError(ValueError):
    pass


class OutOfTheoremScope(BananaError):
    """The spec lies outside the hypotheses under which the rule is proven."""


class ConstructionError(RuntimeError):
    """The certificate construction failed; for in-scope specs this is a bug."""


# ---------------------------------------------------------------------------
# specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BananaTreeSpec:
    n: int
    edges: tuple[tuple[int, int, int], ...]   # (u, v, multiplicity)

    def __post_init__(self):
        if self.n < 2 or len(self.edges) != self.n - 1:
            raise BananaError("a banana tree needs a tree with n-1 edges on n >= 2 vertices")
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v, k in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise BananaError(f"bad tree edge ({u}, {v})")
            if k < 1:
                raise BananaError("multiplicities must be positive")
            ru, rv = find(u), find(v)
            if ru == rv:
                raise BananaError("tree edges contain a cycle")
            parent[ru] = rv

    @property
    def tree_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            adj[u].append(i)
            adj[v].append(i)
        return adj

    def independent(self, banana: int, j: int) -> int:
        return self.n + sum(k for _, _, k in self.edges[:banana]) + j

    def graph(self) -> PlanarGraph:
        edges = []
        for i, (u, v, k) in enumerate(self.edges):
            for j in range(k):
                x = self.independent(i, j)
                edges += [(u, x), (v, x)]
        total = self.n + sum(k for _, _, k in self.edges)
        return PlanarGraph.from_edges(total, edges)


@dataclass(frozen=True)
class BananaPathSpec:
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if not self.multiplicities:
            raise BananaError("a banana path has length at least 1")
        if any(k < 1 for k in self.multiplicities):
            raise BananaError("multiplicities must be positive")

    @property
    def length(self) -> int:
        return len(self.multiplicities)

    @property
    def a(self) -> tuple[int, ...]:
        """Alignment capacities a_0..a_l (a_0 = a_l = 1)."""
        k = self.multiplicities
        return (1,) + tuple(min(k[i], k[i + 1]) for i in range(len(k) - 1)) + (1,)

    @property
    def s(self) -> tuple[int, ...]:
        """Surplus s_1..s_l."""
        a = self.a
        return tuple(max(k - a[i], k - a[i + 1]) for i, k in enumerate(self.multiplicities))

    def tree(self) -> BananaTreeSpec:
        return BananaTreeSpec(self.length + 1, tuple((i, i + 1, k) for i, k in enumerate(self.multiplicities)))

    def graph(self) -> PlanarGraph:
        return self.tree().graph()


@dataclass(frozen=True)
class BananaCycleSpec:
    multiplicities: tuple[int, ...]   # banana i joins covering vertices i and i+1 (mod l)

    def __post_init__(self):
        object.__setattr__(self, "multiplicities", tuple(self.multiplicities))
        if len(self.multiplicities) < 5:
            raise OutOfTheoremScope("banana cycles are supported for length at least five")
        if any(k < 2 for k in self.multiplicities):
            raise OutOfTheoremScope("every banana of a banana cycle needs at least two independent vertices")

    @property
    def length(self) -> int:
        return len(self.multiplicities)

    def independent(self, banana: int, j: int) -> int:
        return self.length + sum(self.multiplicities[:banana]) + j

    def graph(self) -> PlanarGraph:
        ell = self.length
        edges = []
        for i, k in enumerate(self.multiplicities):
            for j in range(k):
                x = self.independent(i, j)
                edges += [(i, x), ((i + 1) % ell, x)]
        return PlanarGraph.from_edges(ell + sum(self.multiplicities), edges)


def spec_from_block(block) -> BananaPathSpec | BananaTreeSpec | BananaCycleSpec:
    """Parse the ``banana`` block of the graph file format."""
    if not isinstance(block, dict) or "kind" not in block:
        raise BananaError("banana block needs a 'kind'")
    kind = block["kind"]
    extra = set(block) - {"kind", "multiplicities", "edges", "vertices"}
    if extra:
        raise BananaError(f"unknown banana field(s): {', '.join(sorted(extra))}")
    if kind == "path":
        return BananaPathSpec(tuple(block["multiplicities"]))
    if kind == "cycle":
        return BananaCycleSpec(tuple(block["multiplicities"]))
    if kind == "tree":
        raw = block["edges"]
        labels: dict[str, int] = {}
        for u, v, _ in raw:
            for lab in (str(u), str(v)):
                labels.setdefault(lab, len(labels))
        return BananaTreeSpec(len(labels), tuple((labels[str(u)], labels[str(v)], int(k)) for u, v, k in raw))
    raise BananaError(f"unknown banana kind {kind!r}")


def star_tree(multiplicities: Sequence[int]) -> BananaTreeSpec:
    return BananaTreeSpec(len(multiplicities) + 1, tuple((0, i + 1, k) for i, k in enumerate(multiplicities)))


# ---------------------------------------------------------------------------
# values
# ---------------------------------------------------------------------------


def seg_banana(k: int) -> int:
    if k < 1:
        raise BananaError("a k-banana needs k >= 1")
    return 3 * k // 2


def seg_banana_path(spec: BananaPathSpec | Sequence[int]) -> int:
    if not isinstance(spec, BananaPathSpec):
        spec = BananaPathSpec(tuple(spec))
    k, a, s = spec.multiplicities, spec.a, spec.s
    ell = spec.length
    return sum(2 * x for x in k) - ell - sum(a[1:ell]) - sum(x // 2 for x in s)


def seg_banana_path_printed(spec: BananaPathSpec | Sequence[int]) -> int:
    """The closed form as typeset, kept for comparison; it subtracts a_l = 1
    once too often."""
    if not isinstance(spec, BananaPathSpec):
        spec = BananaPathSpec(tuple(spec))
    a, s = spec.a, spec.s
    return sum(2 * k - 1 - a[i + 1] - s[i] // 2 for i, k in enumerate(spec.multiplicities))


@dataclass
class TreePlan:
    """Alignment plan of a banana tree."""

    cross: list[int]                         # cross pairs at each tree vertex
    cross_ends: dict[tuple[int, int], int]   # (vertex, banana) -> edges of that banana in cross pairs
    inner_end: list[int]                     # vertex at which banana i aligns its own edges
    inner_pairs: list[int]                   # number of such pairs
    large: dict[int, int] = field(default_factory=dict)   # vertex -> large banana there

    @property
    def aligned(self) -> int:
        return sum(self.cross) + sum(self.inner_pairs) + len(self.inner_pairs)


def tree_plan(spec: BananaTreeSpec) -> TreePlan:
    adj = spec.tree_adj
    ks = [k for _, _, k in spec.edges]
    cross = [0] * spec.n
    ends: dict[tuple[int, int], int] = {}
    large: dict[int, int] = {}
    for v in range(spec.n):
        inc = adj[v]
        if len(inc) == 1:
            ends[(v, inc[0])] = 0
            continue
        total = sum(ks[e] for e in inc)
        big = max(inc, key=lambda e: (ks[e], -e))
        if ks[big] > total - ks[big]:
            large[v] = big
            cross[v] = total - ks[big]
            for e in inc:
                ends[(v, e)] = ks[e] if e != big else cross[v]
        else:
            cross[v] = total // 2
            for e in inc:
                ends[(v, e)] = ks[e]
            if total % 2:
                ends[(v, big)] -= 1
    inner_end, inner_pairs = [], []
    for i, (u, v, k) in enumerate(spec.edges):
        best = max((((k - max(ends[(x, i)], 1)) // 2, -j, x) for j, x in enumerate((u, v))))
        inner_pairs.append(best[0])
        inner_end.append(best[2])
    return TreePlan(cross, ends, inner_end, inner_pairs, large)


def seg_banana_tree(spec: BananaTreeSpec) -> int:
    m = 2 * sum(k for _, _, k in spec.edges)
    return m - tree_plan(spec).aligned


def _residual_paths(ks: Sequence[int]) -> list[list[int]]:
    """Maximal runs of positive entries of a cyclic sequence (not all positive)."""
    ell = len(ks)
    start = next(i for i in range(ell) if ks[i] == 0)
    runs, cur = [], []
    for step in range(1, ell + 1):
        x = ks[(start + step) % ell]
        if x > 0:
            cur.append(x)
        elif cur:
            runs.append(cur)
            cur = []
    if cur:
        runs.append(cur)
    return runs


def seg_banana_cycle(spec: BananaCycleSpec) -> int:
    """Regular part H of multiplicity h = min k: one alignment per banana at
    an independent vertex and h pairs at every covering vertex.  The residual
    banana paths are aligned like banana paths without alignments at
    independent vertices."""
    ks = spec.multiplicities
    ell = spec.length
    h = min(ks)
    m = 2 * sum(ks)
    aligned = ell + h * ell
    for run in _residual_paths([k - h for k in ks]):
        a = [0] + [min(run[i], run[i + 1]) for i in range(len(run) - 1)] + [0]
        aligned += sum(a)
        aligned += sum(max(k - a[i], k - a[i + 1]) // 2 for i, k in enumerate(run))
    return m - aligned


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _unit(theta: float) -> tuple[Fraction, Fraction]:
    """Exact rational vector pointing (almost) in direction theta."""
    theta = math.remainder(theta, 2 * math.pi)
    if abs(theta) > math.pi / 2:
        x, y = _unit(theta - math.copysign(math.pi, theta))
        return -x, -y
    t = Fraction(math.tan(theta / 2)).limit_denominator(1 << 20)
    return 1 - t * t, 2 * t


def _angle(d) -> float:
    return math.atan2(float(d[1]), float(d[0]))


@dataclass
class _Ray:
    angle: float           # local angle; 0 is the star's reference direction
    banana: int
    straight: bool = False
    partner: int | None = None   # index of the exactly opposite ray


def _layout_balanced(blocks: list[tuple[int, int, int, int]]) -> list[_Ray]:
    """Centrally symmetric star for a vertex without a large banana.

    ``blocks``: (banana, cross rays, free rays (0/1), left count) in cyclic order.
    """
    seq: list[int] = []
    for b, c, _, _ in blocks:
        seq += [b] * c
    two_c = len(seq)
    half = two_c // 2
    internal = [seq[t] == seq[(t + 1) % two_c] for t in range(two_c)]
    small = [internal[t] or internal[(t + half) % two_c] for t in range(half)]
    n_small = sum(small)
    n_large = half - n_small
    if n_large == 0:
        gaps_half = [math.pi / half] * half
    else:
        sigma = min(math.pi / (2 * half), math.pi / 8)
        big = (math.pi - n_small * sigma) / n_large
        gaps_half = [sigma if s else big for s in small]
    gaps = gaps_half + gaps_half
    angles = [0.0]
    for t in range(two_c - 1):
        angles.append(angles[-1] + gaps[t])
    rays = [_Ray(angles[t], seq[t], partner=(t + half) % two_c) for t in range(two_c)]
    # free ray and straight ray per block
    out: list[_Ray] = []
    pos = 0
    for b, c, f, left in blocks:
        members = list(range(pos, pos + c))
        pos += c
        block = [rays[t] for t in members]
        if f and c == 0:
            prev = (pos - 1) % two_c
            block.append(_Ray(rays[prev].angle + gaps[prev] / 2, b))
        elif f:
            # free ray sits half way into the neighbouring gap
            lo, hi = members[0], members[-1]
            if left >= 1 and (c == 0 or left > (c - 1) // 2):
                gap = gaps[hi % two_c]
                block.append(_Ray(rays[hi].angle + gap / 2, b))
            else:
                gap = gaps[(lo - 1) % two_c]
                block.insert(0, _Ray(rays[lo].angle - gap / 2, b))
        order = sorted(block, key=lambda r: r.angle)
        order[len(order) - 1 - left].straight = True
        out += order
    # partners refer to positions in ``rays``; rebuild them for ``out``
    index = {id(r): i for i, r in enumerate(out)}
    for r in out:
        if r.partner is not None:
            r.partner = index[id(rays[r.partner])]
    return out


def _layout_large(j: int, others: list[tuple[int, int, int]], cross_j: int, pairs_j: int,
                  free_j: int, left_j: int) -> list[_Ray]:
    """Star in the frame where the large banana j points at angle 0.

    ``others``: (banana, rays, left count) in cyclic order.
    """
    o = sum(c for _, c, _ in others)
    assert o == cross_j
    rays: list[_Ray] = []
    sig = (math.pi / 6) / max(o, 1)
    angles, owner = [], []
    cur = 0.0
    for idx, (b, c, _) in enumerate(others):
        for t in range(c):
            if angles:
                cur += sig if t > 0 else 2 * sig
            angles.append(cur)
            owner.append(b)
    # choose which other ray sits opposite j's straight edge
    left_cross = min(max(o - 1, 0), max(left_j - pairs_j, 0)) if o else 0
    free_left = left_j - pairs_j - left_cross
    if not 0 <= free_left <= free_j:
        raise ConstructionError("infeasible split at a large banana")
    # j's cross ray at local angle delta is opposite the other ray at pi + delta;
    # j rays with positive delta are counted on its left
    t0 = o - 1 - left_cross
    shift = math.pi - angles[t0] if o else 0.0
    for t in range(o):
        a = angles[t] + shift
        rays.append(_Ray(a, owner[t]))
    base = len(rays)
    for t in range(o):
        rays.append(_Ray(rays[t].angle - math.pi, j, straight=(t == t0), partner=t))
        rays[t].partner = base + t
    # straight rays of the others
    pos = 0
    for b, c, left in others:
        block = rays[pos:pos + c]
        block[len(block) - 1 - left].straight = True
        pos += c
    tau = min(sig, math.pi / 12) / max(pairs_j, 1)
    for i in range(pairs_j):
        off = (i - (pairs_j - 1) / 2) * tau
        a = len(rays)
        rays.append(_Ray(math.pi / 2 + off, j, partner=a + 1))
        rays.append(_Ray(-math.pi / 2 + off, j, partner=a))
    if o == 0:
        # leaf: the straight ray itself is free
        rays.append(_Ray(0.0, j, straight=True))
    own = [r.angle for r in rays if r.banana == j and abs(r.angle) < math.pi / 3]
    limit = 5 * math.pi / 12
    span_l = max(own) + sig / 2
    span_r = -min(own) + sig / 2
    right = free_j - free_left
    for i in range(free_left):
        rays.append(_Ray(span_l + (i + 1) * (limit - span_l) / (free_left + 1), j))
    for i in range(right):
        rays.append(_Ray(-span_r - (i + 1) * (limit - span_r) / (right + 1), j))
    return rays


def _vertex_star(spec: BananaTreeSpec, plan: TreePlan, v: int, parent_banana: int | None,
                 left: dict[tuple[int, int], int]) -> list[_Ray]:
    """Rays at tree vertex v in the frame where the parent banana points at 0."""
    ks = [k for _, _, k in spec.edges]
    inc = spec.tree_adj[v]
    if parent_banana is not None:
        i = inc.index(parent_banana)
        inc = inc[i:] + inc[:i]
    if len(inc) == 1:
        e = inc[0]
        pairs = plan.inner_pairs[e] if plan.inner_end[e] == v else 0
        free = ks[e] - 1 - 2 * pairs
        return _layout_large(e, [], 0, pairs, free, left[(v, e)])
    if v in plan.large:
        j = plan.large[v]
        pairs = plan.inner_pairs[j] if plan.inner_end[j] == v else 0
        cross = plan.cross_ends[(v, j)]
        free = ks[j] - cross - 2 * pairs
        pos = inc.index(j)
        others = [(e, ks[e], left[(v, e)]) for e in inc[pos + 1:] + inc[:pos]]
        rays = _layout_large(j, others, cross, pairs, free, left[(v, j)])
    else:
        blocks = []
        for e in inc:
            c = plan.cross_ends[(v, e)]
            blocks.append((e, c, ks[e] - c, left[(v, e)]))
        rays = _layout_balanced(blocks)
    ref = next(r.angle for r in rays if r.straight and r.banana == inc[0])
    for r in rays:
        r.angle -= ref
    return rays


def _intersect_rays(p, d, q, e) -> Point:
    # p + s d = q + t e
    det = d[0] * (-e[1]) - d[1] * (-e[0])
    if det == 0:
        raise ConstructionError("parallel rays")
    rx, ry = q[0] - p[0], q[1] - p[1]
    s = (rx * (-e[1]) - ry * (-e[0])) / det
    t = (d[0] * ry - d[1] * rx) / det
    if s <= 0 or t <= 0:
        raise ConstructionError("rays do not meet in front of both covering vertices")
    return pt(p[0] + s * d[0], p[1] + s * d[1])


def _tree_drawing(spec: BananaTreeSpec, lam: Fraction) -> Drawing:
    plan = tree_plan(spec)
    adj = spec.tree_adj
    ks = [k for _, _, k in spec.edges]
    root = next(v for v in range(spec.n) if len(adj[v]) == 1)
    # balanced left counts, seen from the parent end
    left: dict[tuple[int, int], int] = {}
    order, parent_of = [root], {root: None}
    dq = deque([root])
    while dq:
        u = dq.popleft()
        for e in adj[u]:
            a, b, _ = spec.edges[e]
            w = b if a == u else a
            if w in parent_of:
                continue
            parent_of[w] = e
            left[(u, e)] = (ks[e] - 1) // 2
            left[(w, e)] = ks[e] - 1 - left[(u, e)]
            order.append(w)
            dq.append(w)
    pos: dict[int, Point] = {root: pt(0, 0)}
    ref_dir: dict[int, tuple[Fraction, Fraction]] = {root: (Fraction(1), Fraction(0))}
    scale: dict[int, Fraction] = {root: Fraction(1)}
    ray_dirs: dict[int, list[tuple[_Ray, tuple[Fraction, Fraction]]]] = {}
    for v in order:
        rays = _vertex_star(spec, plan, v, parent_of[v], left)
        base = _angle(ref_dir[v])
        dirs: list = [None] * len(rays)
        for i, r in enumerate(rays):
            if r.straight and r.banana == parent_of[v]:
                dirs[i] = ref_dir[v]
                if r.partner is not None:
                    dirs[r.partner] = (-ref_dir[v][0], -ref_dir[v][1])
        for i, r in enumerate(rays):
            if dirs[i] is not None:
                continue
            d = _unit(base + r.angle)
            dirs[i] = d
            if r.partner is not None:
                dirs[r.partner] = (-d[0], -d[1])
        ray_dirs[v] = list(zip(rays, dirs))
        for r, d in ray_dirs[v]:
            if not r.straight or r.banana == parent_of[v]:
                continue
            a, b, _ = spec.edges[r.banana]
            w = b if a == v else a
            norm = math.hypot(float(d[0]), float(d[1]))
            s = Fraction(float(scale[v]) / norm).limit_denominator(1 << 30)
            pos[w] = pt(pos[v][0] + s * d[0], pos[v][1] + s * d[1])
            ref_dir[w] = (-d[0], -d[1])
            scale[w] = scale[v] * lam
    coords = dict(pos)
    for e, (a, b, k) in enumerate(spec.edges):
        u, w = (a, b) if parent_of.get(b) == e else (b, a)
        at_u = [(r, d) for r, d in ray_dirs[u] if r.banana == e]
        at_w = [(r, d) for r, d in ray_dirs[w] if r.banana == e]
        su = next(r.angle for r, _ in at_u if r.straight)
        sw = next(r.angle for r, _ in at_w if r.straight)

        def rel(r, s0):
            return math.remainder(r.angle - s0, 2 * math.pi)

        lu = sorted([x for x in at_u if rel(x[0], su) > 0], key=lambda x: rel(x[0], su))
        ru = sorted([x for x in at_u if rel(x[0], su) < 0], key=lambda x: -rel(x[0], su))
        lw = sorted([x for x in at_w if rel(x[0], sw) > 0], key=lambda x: rel(x[0], sw))
        rw = sorted([x for x in at_w if rel(x[0], sw) < 0], key=lambda x: -rel(x[0], sw))
        if len(lu) != len(rw) or len(ru) != len(lw):
            raise ConstructionError("left/right counts disagree across a banana")
        xs = [spec.independent(e, j) for j in range(k)]
        coords[xs[0]] = pt((pos[u][0] + pos[w][0]) / 2, (pos[u][1] + pos[w][1]) / 2)
        j = 1
        for side_u, side_w in ((lu, rw), (ru, lw)):
            for (r1, d1), (r2, d2) in zip(side_u, side_w):
                if abs(rel(r1, su)) + abs(rel(r2, sw)) >= math.pi - 1e-6:
                    raise ConstructionError("lens angles too wide")
                coords[xs[j]] = _intersect_rays(pos[u], d1, pos[w], d2)
                j += 1
    return Drawing(spec.graph(), coords)


def draw_banana_tree(spec: BananaTreeSpec) -> Drawing:
    target = seg_banana_tree(spec)
    last = None
    for lam in (Fraction(1, 8), Fraction(1, 32), Fraction(1, 256), Fraction(1, 4096)):
        try:
            d = _tree_drawing(spec, lam)
        except ConstructionError as exc:
            last = exc
            continue
        rep = validate_drawing(d)
        if rep.ok and segment_count(d, validate=False) == target:
            return d
        last = ConstructionError(f"candidate drawing rejected: {rep.violation or 'segment count mismatch'}")
    raise ConstructionError(str(last))


def draw_banana_path(spec: BananaPathSpec | Sequence[int]) -> Drawing:
    if not isinstance(spec, BananaPathSpec):
        spec = BananaPathSpec(tuple(spec))
    return draw_banana_tree(spec.tree())


def draw_banana(k: int) -> Drawing:
    return draw_banana_path(BananaPathSpec((k,)))


def _rational_polygon(ell: int, radius: int = 1000) -> list[Point]:
    return [pt(*(radius * c for c in _unit_scaled(2 * math.pi * i / ell))) for i in range(ell)]


def _unit_scaled(theta: float) -> tuple[Fraction, Fraction]:
    return (Fraction(math.cos(theta)).limit_denominator(1 << 16),
            Fraction(math.sin(theta)).limit_denominator(1 << 16))


def _line_meet(p1, p2, q1, q2) -> Point:
    d = (p2[0] - p1[0], p2[1] - p1[1])
    e = (q2[0] - q1[0], q2[1] - q1[1])
    det = d[0] * (-e[1]) + d[1] * e[0]
    if det == 0:
        raise ConstructionError("parallel lines")
    rx, ry = q1[0] - p1[0], q1[1] - p1[1]
    s = (rx * (-e[1]) + ry * e[0]) / det
    return pt(p1[0] + s * d[0], p1[1] + s * d[1])


def draw_banana_cycle(spec: BananaCycleSpec) -> Drawing:
    """Star-polygon drawing of a banana cycle of multiplicity two.

    The covering vertices form a convex polygon; one independent vertex of
    banana i sits on the polygon side, the other at the tip where the two
    neighbouring sides, extended, meet.
    """
    if set(spec.multiplicities) != {2}:
        raise NotImplementedError("certificate drawings are implemented for multiplicity-2 banana cycles")
    ell = spec.length
    poly = _rational_polygon(ell)
    coords: dict[int, Point] = {i: poly[i] for i in range(ell)}
    for i in range(ell):
        a, b = poly[i], poly[(i + 1) % ell]
        coords[spec.independent(i, 0)] = pt((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        coords[spec.independent(i, 1)] = _line_meet(poly[(i - 1) % ell], a, b, poly[(i + 2) % ell])
    d = Drawing(spec.graph(), coords)
    rep = validate_drawing(d)
    if not rep.ok:
        raise ConstructionError(f"cycle drawing invalid: {rep.violation}")
    if segment_count(d, validate=False) != seg_banana_cycle(spec):
        raise ConstructionError("cycle drawing misses the planned alignments")
    return d


__all__ = [
    "BananaError", "OutOfTheoremScope", "ConstructionError",
    "BananaTreeSpec", "BananaPathSpec", "BananaCycleSpec", "TreePlan",
    "spec_from_block", "star_tree", "seg_banana", "seg_banana_path", "seg_banana_path_printed",
    "seg_banana_tree", "seg_banana_cycle", "tree_plan",
    "draw_banana", "draw_banana_path", "draw_banana_tree", "draw_banana_cycle",
]
