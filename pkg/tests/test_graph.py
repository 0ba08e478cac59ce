import itertools

import networkx as nx
import pytest

from segnum.graph import (
    GraphError,
    NonPlanarError,
    PlanarGraph,
    banana_graph,
    complete_bipartite,
    complete_graph,
    count_rotation_systems,
    cycle_graph,
    decompose,
    disjoint_union,
    enumerate_embeddings,
    euler_genus_ok,
    faces,
    light_paths,
    path_graph,
    star_graph,
)


def test_edges_are_normalised_and_sorted():
    g = PlanarGraph.from_edges(3, [(2, 1), (1, 0)])
    assert g.edges == ((0, 1), (1, 2))
    assert g.degree(1) == 2
    assert g.has_edge(2, 1)


@pytest.mark.parametrize("edges,msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 5)], "undeclared"),
])
def test_bad_edges_rejected(edges, msg):
    with pytest.raises(GraphError, match=msg):
        PlanarGraph.from_edges(3, edges)


def test_rotation_must_match_neighbours():
    with pytest.raises(GraphError):
        PlanarGraph.from_edges(3, [(0, 1), (1, 2)], rotation=[(1,), (0,), (0,)])


@pytest.mark.parametrize("g,n,m", [
    (path_graph(4), 4, 3),
    (cycle_graph(5), 5, 5),
    (complete_graph(4), 4, 6),
    (star_graph(4), 5, 4),
    (complete_bipartite(2, 3), 5, 6),
    (banana_graph(3), 5, 6),
])
def test_builders(g, n, m):
    assert (g.n, g.m) == (n, m)
    assert g.is_planar()


def test_banana_covering_vertices():
    g = banana_graph(4)
    assert sorted(g.degree(v) for v in range(g.n)) == [2, 2, 2, 2, 4, 4]


def test_decompose_kinds():
    g = disjoint_union(path_graph(3), cycle_graph(4), complete_graph(4), PlanarGraph.from_edges(1, []))
    d = decompose(g)
    kinds = sorted(d.kind(i) for i in range(len(d.components)))
    assert kinds == ["cycle", "isolated", "other", "path"]


def test_light_paths_of_a_loop_with_tail():
    # 1 has degree 3: a closed chain 1-2-0-3-1 and a tail 1-4-5
    g = PlanarGraph.from_edges(6, [(0, 2), (2, 1), (0, 3), (3, 1), (1, 4), (4, 5)])
    lps = light_paths(g)
    assert sorted(lp.endpoint_kind for lp in lps) == ["degreeOne", "highDegree"]
    closed = [lp for lp in lps if lp.vertices[0] == lp.vertices[-1]]
    assert len(closed) == 1 and closed[0].t == 4
    assert sum(lp.t for lp in lps) == g.m


def test_light_paths_of_k4_are_single_edges():
    assert light_paths(complete_graph(4)) == []


def test_faces_of_embedded_cycle():
    g = cycle_graph(5)
    rot = next(enumerate_embeddings(g))
    assert len(faces(g, rot)) == 2
    assert euler_genus_ok(g, rot)


def _planar_rotations_bruteforce(g):
    """Count rotation systems passing networkx's embedding check, up to reflection."""
    def orders(nbrs):
        if len(nbrs) <= 2:
            return [tuple(nbrs)]
        return [(nbrs[0],) + p for p in itertools.permutations(nbrs[1:])]

    keys = set()
    for rot in itertools.product(*(orders(list(g.adj[v])) for v in range(g.n))):
        emb = nx.PlanarEmbedding()
        for v in range(g.n):
            emb.add_node(v)
            prev = None
            for w in rot[v]:
                emb.add_half_edge(v, w, cw=prev) if prev is not None else emb.add_half_edge_first(v, w)
                prev = w
        try:
            emb.check_structure()
        except nx.NetworkXException:
            continue
        fwd = tuple(rot)
        rev = tuple((r[0],) + tuple(reversed(r[1:])) if len(r) > 2 else r for r in rot)
        keys.add(min(fwd, rev))
    return len(keys)


@pytest.mark.parametrize("g", [complete_graph(4), banana_graph(3), complete_bipartite(2, 3), star_graph(4)])
def test_embedding_count_matches_networkx(g):
    assert len(list(enumerate_embeddings(g))) == _planar_rotations_bruteforce(g)


def test_nonplanar_rejected():
    with pytest.raises(NonPlanarError):
        next(enumerate_embeddings(complete_graph(5)))


def test_rotation_system_count():
    assert count_rotation_systems(complete_graph(4)) == 2 ** 4
    assert count_rotation_systems(cycle_graph(6)) == 1
