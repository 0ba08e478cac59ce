"""Planar graph representation, component analysis and embedding enumeration."""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import networkx as nx

Edge = tuple[int, int]
Rotation = tuple[tuple[int, ...], ...]


class GraphError(ValueError):
    """Raised for structurally invalid graphs."""


class NonPlanarError(GraphError):
    pass


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PlanarGraph:
    """Simple graph on vertices ``0..n-1``.

    ``rotation[v]`` is the counterclockwise cyclic order of the neighbours of
    ``v`` when an embedding is attached.  ``labels`` keeps the names used in
    the input file.
    """

    n: int
    edges: tuple[Edge, ...]
    rotation: Rotation | None = None
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge ({u}, {v}) has an undeclared endpoint")
            e = norm_edge(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if self.rotation is not None:
            if len(self.rotation) != self.n:
                raise GraphError("rotation must list every vertex")
            for v, order in enumerate(self.rotation):
                if sorted(order) != sorted(self.adj[v]) or len(set(order)) != len(order):
                    raise GraphError(f"rotation at {v} does not list its neighbours exactly once")

    @classmethod
    def from_edges(cls, n: int, edges, rotation=None, labels=None) -> PlanarGraph:
        rot = None if rotation is None else tuple(tuple(r) for r in rotation)
        return cls(n, tuple(norm_edge(u, v) for u, v in edges), rot,
                   None if labels is None else tuple(str(x) for x in labels))

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    @property
    def m(self) -> int:
        return len(self.edges)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def with_rotation(self, rotation) -> PlanarGraph:
        return PlanarGraph.from_edges(self.n, self.edges, rotation, self.labels)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g

    def is_planar(self) -> bool:
        return nx.check_planarity(self.to_networkx())[0]

    def induced(self, vertices: Sequence[int]) -> tuple[PlanarGraph, list[int]]:
        """Induced subgraph, relabelled densely; also returns new->old ids."""
        keep = sorted(vertices)
        index = {v: i for i, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        labels = [self.label(v) for v in keep]
        return PlanarGraph.from_edges(len(keep), edges, labels=labels), keep


def disjoint_union(*graphs: PlanarGraph) -> PlanarGraph:
    edges, offset = [], 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.n
    return PlanarGraph.from_edges(offset, edges)


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComponentDecomposition:
    components: tuple[PlanarGraph, ...]
    vertex_maps: tuple[tuple[int, ...], ...]  # component id -> original id
    path_components: tuple[int, ...]
    cycle_components: tuple[int, ...]
    isolated: tuple[int, ...] = ()

    def kind(self, i: int) -> str:
        if i in self.path_components:
            return "path"
        if i in self.cycle_components:
            return "cycle"
        if i in self.isolated:
            return "isolated"
        return "other"


def connected_components(g: PlanarGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_path_graph(g: PlanarGraph) -> bool:
    return g.n >= 2 and g.m == g.n - 1 and all(g.degree(v) <= 2 for v in range(g.n))


def is_cycle_graph(g: PlanarGraph) -> bool:
    return g.n >= 3 and g.m == g.n and all(g.degree(v) == 2 for v in range(g.n))


def decompose(g: PlanarGraph) -> ComponentDecomposition:
    comps, maps, paths, cycles, isolated = [], [], [], [], []
    for i, verts in enumerate(connected_components(g)):
        sub, keep = g.induced(verts)
        comps.append(sub)
        maps.append(tuple(keep))
        if sub.n == 1:
            isolated.append(i)
        elif is_path_graph(sub):
            paths.append(i)
        elif is_cycle_graph(sub):
            cycles.append(i)
    return ComponentDecomposition(tuple(comps), tuple(maps), tuple(paths), tuple(cycles), tuple(isolated))


def high_degree_subgraph(g: PlanarGraph) -> tuple[PlanarGraph, list[int]]:
    """G_{>2}: subgraph induced by the vertices of degree at least three."""
    return g.induced([v for v in range(g.n) if g.degree(v) > 2])


# ---------------------------------------------------------------------------
# light paths
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LightPath:
    vertices: tuple[int, ...]
    endpoint_kind: str  # "degreeOne" | "highDegree"

    @property
    def t(self) -> int:
        return len(self.vertices) - 1

    @property
    def edges(self) -> list[Edge]:
        return [norm_edge(a, b) for a, b in zip(self.vertices, self.vertices[1:])]


def light_paths(g: PlanarGraph) -> list[LightPath]:
    decomp = decompose(g)
    trivial = set()
    for i in decomp.path_components + decomp.cycle_components:
        trivial.update(decomp.vertex_maps[i])
    if g.m and len(trivial) == g.n:
        raise GraphError("graph consists of path and cycle components only")
    found: dict[frozenset, LightPath] = {}
    for u0 in range(g.n):
        if g.degree(u0) <= 2:
            continue
        for u1 in g.adj[u0]:
            if g.degree(u1) > 2:
                continue
            walk = [u0, u1]
            while g.degree(walk[-1]) == 2:
                a, b = g.adj[walk[-1]]
                nxt = b if a == walk[-2] else a
                walk.append(nxt)
            key = frozenset(norm_edge(a, b) for a, b in zip(walk, walk[1:]))
            kind = "degreeOne" if g.degree(walk[-1]) == 1 else "highDegree"
            cand = LightPath(tuple(walk), kind)
            if kind == "highDegree":
                rev = LightPath(tuple(reversed(walk)), kind)
                cand = min(cand, rev, key=lambda p: p.vertices)
            if key not in found or cand.vertices < found[key].vertices:
                found[key] = cand
    return sorted(found.values(), key=lambda p: p.vertices)


# ---------------------------------------------------------------------------
# embeddings
# ---------------------------------------------------------------------------


def faces(g: PlanarGraph, rotation: Rotation | None = None) -> list[list[tuple[int, int]]]:
    """Faces of a rotation system as lists of darts.

    The face to the left of dart (u, v) continues with (v, w) where w is the
    neighbour preceding u in the counterclockwise order at v.
    """
    rot = rotation if rotation is not None else g.rotation
    if rot is None:
        raise GraphError("graph has no rotation system")
    pos = [{w: i for i, w in enumerate(r)} for r in rot]
    seen = set()
    result = []
    for u in range(g.n):
        for v in rot[u]:
            if (u, v) in seen:
                continue
            face = []
            dart = (u, v)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                a, b = dart
                r = rot[b]
                w = r[(pos[b][a] - 1) % len(r)]
                dart = (b, w)
            result.append(face)
    return result


def euler_genus_ok(g: PlanarGraph, rotation: Rotation) -> bool:
    """True iff the rotation system is a planar embedding of every component."""
    comps = connected_components(g)
    nonempty = [c for c in comps if len(c) > 1]
    f = len(faces(g, rotation))
    # V - E + F = 1 + C over components that carry at least one edge
    v = sum(len(c) for c in nonempty)
    return v - g.m + f == 2 * len(nonempty) if nonempty else True


def _canonical_cycle(seq: Sequence[int]) -> tuple[int, ...]:
    if not seq:
        return ()
    i = seq.index(min(seq))
    return tuple(seq[i:]) + tuple(seq[:i])


def canonical_rotation(rotation: Rotation) -> Rotation:
    """Lexicographically smaller of a rotation and its mirror image."""
    fwd = tuple(_canonical_cycle(list(r)) for r in rotation)
    rev = tuple(_canonical_cycle(list(reversed(r))) for r in rotation)
    return min(fwd, rev)


def _cyclic_orders(nbrs: Sequence[int]) -> Iterator[tuple[int, ...]]:
    if len(nbrs) <= 2:
        yield tuple(nbrs)
        return
    first, rest = nbrs[0], nbrs[1:]
    for perm in itertools.permutations(rest):
        yield (first,) + perm


def enumerate_embeddings(g: PlanarGraph, limit: int | None = None) -> Iterator[Rotation]:
    """Every planar rotation system of ``g`` once, up to reflection.

    Brute force over the product of cyclic orders, filtered by Euler's
    formula.  Works for disconnected graphs as well (each component is
    embedded independently; relative placement is not enumerated).
    """
    if not g.is_planar():
        raise NonPlanarError("graph is not planar")
    choices = [list(_cyclic_orders(g.adj[v])) for v in range(g.n)]
    seen = set()
    count = 0
    for rot in itertools.product(*choices):
        if not euler_genus_ok(g, rot):
            continue
        key = canonical_rotation(rot)
        if key in seen:
            continue
        seen.add(key)
        yield key
        count += 1
        if limit is not None and count >= limit:
            return


def count_rotation_systems(g: PlanarGraph) -> int:
    total = 1
    for v in range(g.n):
        d = g.degree(v)
        total *= max(1, _factorial(d - 1)) if d > 2 else 1
    return total


def _factorial(x: int) -> int:
    out = 1
    for i in range(2, x + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# standard graphs used throughout the package and its tests
# ---------------------------------------------------------------------------


def path_graph(n: int) -> PlanarGraph:
    return PlanarGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> PlanarGraph:
    return PlanarGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> PlanarGraph:
    return PlanarGraph.from_edges(n, list(itertools.combinations(range(n), 2)))


def star_graph(leaves: int) -> PlanarGraph:
    return PlanarGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> PlanarGraph:
    return PlanarGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def banana_graph(k: int) -> PlanarGraph:
    """k-banana: covering vertices 0 and 1, independent vertices 2..k+1."""
    edges = []
    for i in range(k):
        edges += [(0, 2 + i), (1, 2 + i)]
    return PlanarGraph.from_edges(k + 2, edges)
