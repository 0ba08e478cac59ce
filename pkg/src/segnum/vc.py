"""Segment number parameterised by the vertex cover number.

Pipeline: minimum vertex cover, equivalence classes of the independent
vertices, the reduced graph G2, subsets of straight 2-classes, embeddings,
boomerang gadgets, pairings, a realizability check of the gadget graph and
an ILP that reinserts leaves and 2-class vertices.

The ILP can promise more alignments than a drawing delivers, so the value
it claims is only used as a lower bound.  Every yes answer is certified by
expanding the winning configuration into concrete aligned pairs on the
whole graph and solving that alignment formula for an exact witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .drawing import Drawing, segment_count, validate_drawing
from .graph import PlanarGraph, enumerate_embeddings, euler_genus_ok, norm_edge
from .ilp import IlpModel, IlpSolution, Infeasible, solve_ilp
from .realizability import AlignmentInstance, NumericSat, Verdict, build_alignment_formula, decide

DEFAULT_CAP = 3


class VcCapError(ValueError):
    pass


# ---------------------------------------------------------------------------
# vertex cover and classes
# ---------------------------------------------------------------------------


def is_vertex_cover(g: PlanarGraph, cover) -> bool:
    cover = set(cover)
    return all(u in cover or v in cover for u, v in g.edges)


def vertex_cover(g: PlanarGraph) -> frozenset[int]:
    """Minimum vertex cover by bounded-depth branching on an uncovered edge."""

    def branch(edges: list, budget: int):
        if not edges:
            return set()
        if budget == 0:
            return None
        u, v = edges[0]
        for x in (u, v):
            rest = [e for e in edges if x not in e]
            sub = branch(rest, budget - 1)
            if sub is not None:
                return sub | {x}
        return None

    edges = list(g.edges)
    for k in range(g.n + 1):
        res = branch(edges, k)
        if res is not None:
            assert is_vertex_cover(g, res)
            return frozenset(res)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class EquivClass:
    nbhd: frozenset[int]
    members: tuple[int, ...]

    @property
    def j(self) -> int:
        return len(self.nbhd)


@dataclass(frozen=True)
class EquivClasses:
    cover: frozenset[int]
    classes: tuple[EquivClass, ...]

    def of_j(self, j: int) -> list[EquivClass]:
        return [c for c in self.classes if c.j == j]

    def class_of(self, v: int) -> EquivClass | None:
        return next((c for c in self.classes if v in c.members), None)


def equivalence_classes(g: PlanarGraph, cover) -> EquivClasses:
    cover = frozenset(cover)
    if not is_vertex_cover(g, cover):
        raise ValueError("not a vertex cover")
    groups: dict[frozenset, list[int]] = {}
    for v in range(g.n):
        if v not in cover:
            groups.setdefault(frozenset(g.adj[v]), []).append(v)
    classes = tuple(EquivClass(nb, tuple(ms)) for nb, ms in sorted(groups.items(), key=lambda t: (len(t[0]), sorted(t[0]))))
    for c in classes:
        if c.j > 2 and len(c.members) > 2:
            raise ValueError(f"{c.j}-class with {len(c.members)} members: the graph contains K_3,3")
    return EquivClasses(cover, classes)


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------


@dataclass
class TwoClass:
    idx: int                       # position in EquivClasses.classes
    v: int                         # original ids of the cover pair, v < w
    w: int
    members: tuple[int, ...]       # all original members
    kept: tuple[int, ...]          # members that survive trimming


@dataclass
class Reduced:
    g: PlanarGraph
    classes: EquivClasses
    k: int
    graph: PlanarGraph             # G2 on local indices
    orig: list[int]                # local index -> original vertex
    local: dict[int, int]
    leaves: dict[int, list[int]]   # cover vertex -> its 1-class members
    two: list[TwoClass]

    def bound(self) -> int:
        k = self.k
        return k + 2 * sum(math.comb(k, j) for j in range(3, k + 1)) + k * math.comb(k, 2)


def reduce_graph(g: PlanarGraph, classes: EquivClasses) -> Reduced:
    k = len(classes.cover)
    leaves: dict[int, list[int]] = {v: [] for v in sorted(classes.cover)}
    keep = set(classes.cover)
    two = []
    for i, c in enumerate(classes.classes):
        if c.j == 1:
            (v,) = c.nbhd
            leaves[v].extend(c.members)
        elif c.j == 2:
            v, w = sorted(c.nbhd)
            kept = c.members[: min(len(c.members), k)]
            keep.update(kept)
            two.append(TwoClass(i, v, w, c.members, kept))
        elif c.j > 2:
            keep.update(c.members)
    orig = sorted(keep)
    local = {v: i for i, v in enumerate(orig)}
    edges = [(local[u], local[v]) for u, v in g.edges if u in local and v in local]
    red = Reduced(g, classes, k, PlanarGraph.from_edges(len(orig), edges), orig, local, leaves, two)
    assert len(orig) <= red.bound(), "reduced graph exceeds its size bound"
    return red


def enumerate_c_subsets(red: Reduced) -> Iterator[tuple[tuple[int, ...], PlanarGraph]]:
    """Each subset of eligible 2-classes with its edges e_C added to G2.

    A class is eligible when its cover pair is not adjacent in G2.  The
    yielded tuple holds indices into ``red.two``.
    """
    eligible = [i for i, t in enumerate(red.two) if not red.graph.has_edge(red.local[t.v], red.local[t.w])]
    base = list(red.graph.edges)
    for r in range(len(eligible) + 1):
        for sub in itertools.combinations(eligible, r):
            extra = [(red.local[red.two[i].v], red.local[red.two[i].w]) for i in sub]
            yield sub, PlanarGraph.from_edges(red.graph.n, base + extra)


# ---------------------------------------------------------------------------
# boomerangs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Boomerang:
    bid: int
    two: int                       # index into Reduced.two
    group: int                     # contiguous class number within that 2-class
    v: int                         # gadget indices of the cover pair
    w: int
    corners: tuple[int, int]

    @property
    def quad(self) -> tuple[int, int, int, int]:
        return (self.v, self.corners[0], self.w, self.corners[1])


@dataclass
class GadgetGraph:
    red: Reduced
    c_subset: tuple[int, ...]
    graph: PlanarGraph             # with rotation
    orig: list[int | None]         # gadget index -> original vertex (None for corners)
    boomerangs: list[Boomerang]
    corner_of: dict[int, int]      # corner vertex -> bid
    groups: list[tuple[int, tuple[int, ...]]]   # (two index, kept members) per contiguous class

    def local_of(self, v_orig: int) -> int:
        return self.orig.index(v_orig)


def _contiguous_groups(rot, members, v, w) -> list[list[int]]:
    def adjacent(order, a, b):
        i, j = order.index(a), order.index(b)
        return (i - j) % len(order) in (1, len(order) - 1)

    parent = {m: m for m in members}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a, b in itertools.combinations(members, 2):
        if adjacent(rot[v], a, b) and adjacent(rot[w], a, b):
            parent[find(a)] = find(b)
    out: dict[int, list[int]] = {}
    for m in members:
        out.setdefault(find(m), []).append(m)
    return list(out.values())


def _replace_run(order, group, new) -> list[int]:
    order = list(order)
    gs = set(group)
    n = len(order)
    if all(x in gs for x in order):
        return list(new)
    start = next(i for i in range(n) if order[i] in gs and order[i - 1] not in gs)
    rolled = order[start:] + order[:start]
    rest = [x for x in rolled if x not in gs]
    return list(new) + rest


def build_boomerangs(red: Reduced, c_subset, g2c: PlanarGraph, rotation) -> GadgetGraph:
    """Replace every contiguous 2-class of the embedding by two boomerangs."""
    twos_local = {}
    for ti, t in enumerate(red.two):
        twos_local[ti] = (red.local[t.v], red.local[t.w], [red.local[m] for m in t.kept])
    all_members = {m for _, _, ms in twos_local.values() for m in ms}
    keep = [x for x in range(g2c.n) if x not in all_members]
    new_id = {x: i for i, x in enumerate(keep)}
    orig: list[int | None] = [red.orig[x] for x in keep]
    rot = {x: list(rotation[x]) for x in range(g2c.n)}
    groups = []
    for ti, (v, w, ms) in twos_local.items():
        for grp in _contiguous_groups(rotation, ms, v, w):
            groups.append((ti, v, w, grp))
    boomerangs: list[Boomerang] = []
    corner_of: dict[int, int] = {}
    edges = [(new_id[a], new_id[b]) for a, b in g2c.edges if a in new_id and b in new_id]
    placeholder = {}
    for gi, (ti, v, w, grp) in enumerate(groups):
        corners = []
        for _ in range(4):
            corners.append(len(orig))
            orig.append(None)
        for c in corners:
            edges += [(new_id[v], c), (new_id[w], c)]
        placeholder[gi] = corners
        rot[v] = _replace_run(rot[v], grp, [("c", c) for c in corners])
        rot[w] = _replace_run(rot[w], grp, [("c", c) for c in reversed(corners)])
        for s in range(2):
            bid = len(boomerangs)
            pair = (corners[2 * s], corners[2 * s + 1])
            boomerangs.append(Boomerang(bid, ti, gi, new_id[v], new_id[w], pair))
            corner_of[pair[0]] = corner_of[pair[1]] = bid

    def conv(x):
        return x[1] if isinstance(x, tuple) else new_id[x]

    n = len(orig)
    rotation_h: list[tuple[int, ...]] = [() for _ in range(n)]
    for x in keep:
        rotation_h[new_id[x]] = tuple(conv(y) for y in rot[x])
    for b in boomerangs:
        for c in b.corners:
            rotation_h[c] = (b.v, b.w)
    h = PlanarGraph.from_edges(n, edges, rotation_h)
    if not euler_genus_ok(h, h.rotation):
        raise AssertionError("boomerang insertion broke planarity")
    gg = GadgetGraph(red, tuple(c_subset), h, orig, boomerangs, corner_of,
                     [(ti, tuple(red.orig[m] for m in grp)) for ti, _, _, grp in groups])
    return gg


# ---------------------------------------------------------------------------
# pairings
# ---------------------------------------------------------------------------

Item = tuple[str, int]             # ("e", neighbour) or ("b", bid)


@dataclass(frozen=True)
class Pairing:
    pairs: tuple[tuple[int, tuple[tuple[Item, Item], ...]], ...]   # (gadget vertex, pairs there)

    def at(self, x: int) -> tuple[tuple[Item, Item], ...]:
        return dict(self.pairs).get(x, ())

    def all_pairs(self) -> Iterator[tuple[int, Item, Item]]:
        for x, ps in self.pairs:
            for a, b in ps:
                yield x, a, b

    def __str__(self) -> str:
        def s(it):
            return f"{it[0]}{it[1]}"
        return "; ".join(f"{x}: " + " ".join(f"{s(a)}~{s(b)}" for a, b in ps) for x, ps in self.pairs if ps) or "(none)"


def items_at(gg: GadgetGraph, x: int) -> list[Item]:
    out: list[Item] = []
    for y in gg.graph.rotation[x]:
        it = ("b", gg.corner_of[y]) if y in gg.corner_of else ("e", y)
        if it not in out:
            out.append(it)
    return out


def _interleave(i, j, k, l, n) -> bool:
    def between(a, b, c):
        return 0 < (c - a) % n < (b - a) % n
    return between(i, j, k) != between(i, j, l)


def _vertex_pairings(items: list[Item], forbidden=frozenset()) -> list[tuple[tuple[Item, Item], ...]]:
    n = len(items)
    cand = [(i, j) for i, j in itertools.combinations(range(n), 2)
            if frozenset((items[i], items[j])) not in forbidden]
    out = []

    def ok(chosen, p):
        i, j = p
        for a, b in chosen:
            shared = {a, b} & {i, j}
            if shared:
                if any(items[s][0] == "e" for s in shared):
                    return False
            elif not _interleave(a, b, i, j, n):
                return False
        return True

    def rec(idx, chosen):
        if idx == len(cand):
            out.append(tuple((items[a], items[b]) for a, b in chosen))
            return
        rec(idx + 1, chosen)
        if ok(chosen, cand[idx]):
            rec(idx + 1, chosen + [cand[idx]])

    rec(0, [])
    return out


@dataclass
class PairedGadget:
    gadget: GadgetGraph
    pairing: Pairing
    graph: PlanarGraph                                 # gadget plus counterpart stubs
    aligned: tuple[tuple[tuple[int, int], tuple[int, int]], ...]

    def instance(self) -> AlignmentInstance:
        return AlignmentInstance(self.graph, self.aligned, tuple(b.quad for b in self.gadget.boomerangs))


def _with_stubs(gg: GadgetGraph, pairing: Pairing) -> PairedGadget:
    g = gg.graph
    rot = [list(r) for r in g.rotation]
    edges = list(g.edges)
    n = g.n
    aligned = []
    for x, ps in pairing.pairs:
        if not ps:
            continue
        order = items_at(gg, x)
        # stubs per boomerang, collected with the partner position for ordering
        stubs: dict[int, list[tuple[int, int]]] = {}

        def end(it, partner):
            nonlocal n
            if it[0] == "e":
                return it[1]
            s = n
            n += 1
            edges.append((x, s))
            bi = order.index(it)
            pos = (order.index(partner) - bi) % len(order)
            stubs.setdefault(it[1], []).append((pos, s))
            return s

        for a, b in ps:
            ea, eb = end(a, b), end(b, a)
            aligned.append(((x, ea), (x, eb)))
        for bid, lst in stubs.items():
            c0, c1 = gg.boomerangs[bid].corners
            r = rot[x]
            i0, i1 = r.index(c0), r.index(c1)
            first = i0 if (i1 - i0) % len(r) == 1 else i1
            ins = [s for _, s in sorted(lst)]
            rot[x] = r[: first + 1] + ins + r[first + 1:]
    rot += [[x] for x in range(g.n, n)]
    for x, s in edges[len(g.edges):]:
        rot[s] = [x]
    h = PlanarGraph.from_edges(n, edges, rot)
    assert euler_genus_ok(h, h.rotation)
    assert h.m <= 3 * max(1, g.m), "counterpart edges exceed the size bound"
    return PairedGadget(gg, pairing, h, tuple(aligned))


def enumerate_pairings(gg: GadgetGraph) -> Iterator[PairedGadget]:
    verts = [x for x in range(gg.graph.n) if x not in gg.corner_of and gg.graph.degree(x) >= 2]
    per = []
    for x in verts:
        # a boomerang lies strictly on one side of the line through its cover
        # pair, so it never aligns with the edge joining that pair
        forbidden = set()
        for b in gg.boomerangs:
            if x in (b.v, b.w):
                other = b.w if x == b.v else b.v
                forbidden.add(frozenset((("b", b.bid), ("e", other))))
        per.append([(x, p) for p in _vertex_pairings(items_at(gg, x), frozenset(forbidden))])
    for combo in itertools.product(*per):
        pairing = Pairing(tuple((x, p) for x, p in combo if p))
        yield _with_stubs(gg, pairing)


def check_gadget_realizability(pg: PairedGadget, strategy=NumericSat(restarts=6)) -> Verdict:
    return decide(build_alignment_formula(pg.instance()), strategy)


# ---------------------------------------------------------------------------
# ILP
# ---------------------------------------------------------------------------


@dataclass
class IlpPlan:
    model: IlpModel
    base: int                                    # |C| + plain pairs + sum of epsilons
    x: dict[tuple[int, int, int], int] = field(default_factory=dict)    # (vertex, b, d) -> var
    y_bd: dict[tuple[int, int], int] = field(default_factory=dict)      # (vertex, b) -> var
    y_e: dict[tuple[int, int], int] = field(default_factory=dict)       # (vertex, neighbour) -> var
    y_v: dict[int, int] = field(default_factory=dict)
    z: dict[int, int] = field(default_factory=dict)
    eps: dict[tuple[int, int], int] = field(default_factory=dict)       # (vertex, b) -> count


def build_ilp(pg: PairedGadget) -> IlpPlan:
    gg, pairing = pg.gadget, pg.pairing
    red = gg.red
    m = IlpModel()
    plan = IlpPlan(m, 0)
    plain = 0
    paired_edges: dict[int, set[int]] = {}
    for x, a, b in pairing.all_pairs():
        if a[0] == "e" and b[0] == "e":
            plain += 1
        elif a[0] == "b" and b[0] == "b":
            key = (x,) + tuple(sorted((a[1], b[1])))
            plan.x[key] = -1
        else:
            bid = a[1] if a[0] == "b" else b[1]
            plan.eps[(x, bid)] = plan.eps.get((x, bid), 0) + 1
        for it in (a, b):
            if it[0] == "e":
                paired_edges.setdefault(x, set()).add(it[1])
    mu = {}
    for ti, t in enumerate(red.two):
        mu[ti] = len(t.members) - (1 if ti in gg.c_subset else 0)
    big = max([len(t.members) for t in red.two] + [len(ls) for ls in red.leaves.values()] + [0])
    for bb in gg.boomerangs:
        plan.z[bb.bid] = m.var(f"z_{bb.bid}", mu[bb.two])
    for key in list(plan.x):
        x, b, d = key
        plan.x[key] = m.var(f"x_{x}_{b}_{d}", big, 1)
    for v_orig, lv in red.leaves.items():
        x = gg.local_of(v_orig)
        lam = len(lv)
        m.constants[f"lambda_{x}"] = lam
        if lam == 0:
            continue
        row = {}
        for bb in gg.boomerangs:
            if x in (bb.v, bb.w):
                i = plan.y_bd[(x, bb.bid)] = m.var(f"y_{x}_b{bb.bid}", lam, 1)
                row[i] = 1
        for y in gg.graph.rotation[x]:
            if y not in gg.corner_of and y not in paired_edges.get(x, ()):
                i = plan.y_e[(x, y)] = m.var(f"y_{x}_e{y}", 1, 1)
                row[i] = 1
        if lam >= 2:
            i = plan.y_v[x] = m.var(f"y_{x}", lam // 2, 1)
            row[i] = 2
        m.le(row, lam)
    for bb in gg.boomerangs:
        for x in (bb.v, bb.w):
            row = {plan.z[bb.bid]: -1}
            for (xx, b, d), i in plan.x.items():
                if xx == x and bb.bid in (b, d):
                    row[i] = row.get(i, 0) + 1
            if (x, bb.bid) in plan.y_bd:
                row[plan.y_bd[(x, bb.bid)]] = 1
            e = plan.eps.get((x, bb.bid), 0)
            m.constants[f"eps_{x}_{bb.bid}"] = e
            m.le(row, -e)
    for ti in range(len(red.two)):
        m.constants[f"mu_{ti}"] = mu[ti]
        row = {plan.z[bb.bid]: 1 for bb in gg.boomerangs if bb.two == ti}
        if row:
            m.le(row, mu[ti])
    # a pair of boomerangs aligned at both cover vertices cannot reuse the same
    # vertices on both sides (see the decisions ledger)
    for (x, b, d), i in plan.x.items():
        bb = gg.boomerangs[b]
        other = bb.w if x == bb.v else bb.v
        j = plan.x.get((other, b, d))
        if j is not None and x < other:
            for side in (b, d):
                m.le({i: 1, j: 1, plan.z[side]: -1}, 0)
    plan.base = len(gg.c_subset) + plain + sum(plan.eps.values())
    return plan


# ---------------------------------------------------------------------------
# expansion to the full graph
# ---------------------------------------------------------------------------


def expand(pg: PairedGadget, plan: IlpPlan, sol: IlpSolution) -> AlignmentInstance:
    """Concrete aligned pairs on the input graph realising an ILP assignment."""
    gg, red = pg.gadget, pg.gadget.red
    val = dict(enumerate(sol.x))
    pairs = []
    members: dict[int, list[int]] = {}
    straight: dict[int, int] = {}
    for ti, t in enumerate(red.two):
        pool = list(t.members)
        if ti in gg.c_subset:
            u = straight[ti] = pool.pop(0)
            pairs.append(((t.v, u), (u, t.w)))
        for bb in gg.boomerangs:
            if bb.two == ti:
                z = val[plan.z[bb.bid]]
                members[bb.bid], pool = pool[:z], pool[z:]
        if pool:
            first = next(bb.bid for bb in gg.boomerangs if bb.two == ti)
            members[first] += pool
    # role queues: roles at v are taken from the front, roles at w from the back
    cursor: dict[tuple[int, int], int] = {}

    def take(bid: int, x: int) -> int:
        bb = gg.boomerangs[bid]
        ms = members[bid]
        i = cursor.get((bid, x), 0)
        cursor[(bid, x)] = i + 1
        if i >= len(ms):
            raise Infeasible("boomerang ran out of members")
        return ms[i] if x == bb.v else ms[-1 - i]

    def plain_end(x: int, y: int) -> int:
        xo, yo = gg.orig[x], gg.orig[y]
        for ti in gg.c_subset:
            t = red.two[ti]
            if {xo, yo} == {t.v, t.w}:
                return straight[ti]
        return yo

    for x, a, b in pg.pairing.all_pairs():
        if a[0] == "b" and b[0] == "b":
            continue  # realised through the x variables below
        xo = gg.orig[x]
        ends = [plain_end(x, it[1]) if it[0] == "e" else take(it[1], x) for it in (a, b)]
        pairs.append(((xo, ends[0]), (xo, ends[1])))
    for (x, b, d), i in plan.x.items():
        xo = gg.orig[x]
        for _ in range(val[i]):
            pairs.append(((xo, take(b, x)), (xo, take(d, x))))
    leaves = {v: list(ls) for v, ls in red.leaves.items()}
    for (x, bid), i in plan.y_bd.items():
        xo = gg.orig[x]
        for _ in range(val[i]):
            pairs.append(((xo, leaves[xo].pop()), (xo, take(bid, x))))
    for (x, y), i in plan.y_e.items():
        xo = gg.orig[x]
        if val[i]:
            pairs.append(((xo, leaves[xo].pop()), (xo, plain_end(x, y))))
    for x, i in plan.y_v.items():
        xo = gg.orig[x]
        for _ in range(val[i]):
            a, b = leaves[xo].pop(), leaves[xo].pop()
            pairs.append(((xo, a), (xo, b)))
    g = PlanarGraph.from_edges(red.g.n, red.g.edges)
    return AlignmentInstance(g, tuple(pairs))


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------


@dataclass
class Candidate:
    claimed: int                   # segments promised by the accounting
    pg: PairedGadget
    plan: IlpPlan
    sol: IlpSolution
    embedding: tuple

    def describe(self) -> str:
        gg = self.pg.gadget
        return (f"claimed={self.claimed} C={list(gg.c_subset)} boomerangs={len(gg.boomerangs)} "
                f"pairing={self.pg.pairing} ilp={self.sol.value} base={self.plan.base}")


@dataclass
class VcResult:
    value: int | None              # best certified segment count
    lower: int | None              # smallest claim not refuted
    witness: Drawing | None
    winner: Candidate | None
    qualified: bool
    notes: list[str] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def decide(self, s: int) -> tuple[bool, bool]:
        """(answer, qualified) for the question seg <= s."""
        if self.value is not None and self.value <= s:
            return True, False
        return False, self.lower is not None and self.lower <= s


def candidates(g: PlanarGraph, cap: int = DEFAULT_CAP) -> tuple[Reduced, list[Candidate], dict]:
    cover = vertex_cover(g)
    if len(cover) > cap:
        raise VcCapError(f"vertex cover number {len(cover)} exceeds the cap {cap}")
    classes = equivalence_classes(g, cover)
    red = reduce_graph(g, classes)
    out: list[Candidate] = []
    stats = {"cover": len(cover), "c_subsets": 0, "embeddings": 0, "pairings": 0, "ilp_infeasible": 0}
    for sub, g2c in enumerate_c_subsets(red):
        stats["c_subsets"] += 1
        for emb in enumerate_embeddings(g2c):
            stats["embeddings"] += 1
            gg = build_boomerangs(red, sub, g2c, emb)
            for pg in enumerate_pairings(gg):
                stats["pairings"] += 1
                plan = build_ilp(pg)
                try:
                    sol = solve_ilp(plan.model)
                except Infeasible:
                    stats["ilp_infeasible"] += 1
                    continue
                if any(sol.x[i] == 0 for i in plan.x.values()):
                    # dominated by the same pairing without that boomerang pair
                    stats["dominated"] = stats.get("dominated", 0) + 1
                    continue
                claimed = g.m - plan.base - sol.value
                out.append(Candidate(claimed, pg, plan, sol, emb))
    out.sort(key=lambda c: c.claimed)
    return red, out, stats


def segment_number_vc(g: PlanarGraph, limit: int | None = None, cap: int = DEFAULT_CAP,
                      gadget_strategy=NumericSat(restarts=4), expand_strategy=NumericSat(restarts=8)) -> VcResult:
    """Best certified segment count over all configurations.

    Configurations are tried in order of the segment count they claim.  The
    claim of the first one is a lower bound; a configuration only counts once
    its expansion to the whole graph has an exact witness.  With ``limit``
    set, configurations claiming more than ``limit`` segments are skipped.
    """
    if g.m == 0:
        return VcResult(0, 0, Drawing(g, {i: _origin(i) for i in range(g.n)}), None, False)
    red, cands, stats = candidates(g, cap)
    best = VcResult(None, cands[0].claimed if cands else None, None, None, False, stats=stats)
    seen_exp = set()
    stats.update(expansions=0)
    for cand in cands:
        if limit is not None and cand.claimed > limit:
            break
        if best.value is not None and cand.claimed >= best.value:
            break
        try:
            inst = expand(cand.pg, cand.plan, cand.sol)
        except Infeasible as exc:
            best.notes.append(f"expansion failed ({exc}): {cand.describe()}")
            continue
        key = frozenset(frozenset((norm_edge(*e), norm_edge(*h))) for e, h in inst.aligned)
        if key in seen_exp:
            continue
        seen_exp.add(key)
        stats["expansions"] += 1
        f = build_alignment_formula(inst)
        v = decide(f, expand_strategy)
        if not v.sat:
            best.notes.append(f"expansion {v.status}: {cand.describe()}")
            continue
        d = v.drawing(f)
        if not validate_drawing(d, check_rotation=False):
            raise AssertionError("expansion witness failed validation")
        segs = segment_count(d)
        if best.value is None or segs < best.value:
            best.value, best.witness, best.winner = segs, d, cand
    if best.value is not None and best.lower is not None:
        best.lower = min(best.lower, best.value)
    best.qualified = best.lower is not None and (best.value is None or best.lower < best.value)
    if best.winner is not None:
        gv = check_gadget_realizability(best.winner.pg, gadget_strategy)
        stats["winner_gadget"] = gv.status
        if not gv.sat:
            best.notes.append(f"winning gadget graph {gv.status} under {type(gadget_strategy).__name__}")
    return best


def _origin(i: int):
    from .drawing import pt
    return pt(i, 0)


def segment_number_by_vc(g: PlanarGraph, s: int, cap: int = DEFAULT_CAP) -> tuple[bool, VcResult]:
    """Decide seg(g) <= s.  The result's ``decide`` reports any qualification."""
    res = segment_number_vc(g, limit=s, cap=cap)
    return res.decide(s)[0], res


__all__ = [
    "VcCapError", "vertex_cover", "is_vertex_cover", "EquivClass", "EquivClasses", "equivalence_classes",
    "TwoClass", "Reduced", "reduce_graph", "enumerate_c_subsets", "Boomerang", "GadgetGraph",
    "build_boomerangs", "Pairing", "PairedGadget", "items_at", "enumerate_pairings",
    "check_gadget_realizability", "IlpPlan", "build_ilp", "expand", "Candidate", "VcResult",
    "candidates", "segment_number_vc", "segment_number_by_vc",
]
