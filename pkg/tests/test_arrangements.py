import itertools

import networkx as nx
import pytest

from segnum.arrangements import (
    ArrangementCapError,
    EnumerationStats,
    arrangements,
    enumerate_arrangements,
    enumerate_routings,
    feasible_collection,
    place_high_degree,
)
from segnum.graph import PlanarGraph, path_graph


# hand count: k=2 parallel or crossing; k=3 all parallel, one parallel
# pair, concurrent, general position.  k=4 adds up to 9 classes
# (1 + 1 + 1 + 3 + 3 by parallel-class partition).
@pytest.mark.parametrize("k,count", [(1, 1), (2, 2), (3, 4), (4, 9)])
def test_arrangement_counts(k, count):
    arrs = list(enumerate_arrangements(k))
    assert len(arrs) == count
    keys = [a.canonical_key() for a in arrs]
    assert len(set(keys)) == len(keys)


def test_k3_crossing_profiles():
    profile = sorted((a.n_crossings, max((len(p) for p in a.points), default=0)) for a in arrangements(3))
    assert profile == [(0, 0), (1, 3), (2, 2), (3, 2)]


def test_stats_and_cap():
    st = EnumerationStats()
    list(enumerate_arrangements(3, stats=st))
    assert st.realized == 4 and st.unknown == 0 and st.classes >= 4
    with pytest.raises(ArrangementCapError):
        next(enumerate_arrangements(5))
    with pytest.raises(ValueError):
        next(enumerate_arrangements(0))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_arrangement_graph(k):
    for a in arrangements(k):
        g = a.graph()
        assert g.n == a.n_crossings + 2 * k
        assert g.rotation is not None
        for p in range(a.n_crossings):
            assert g.degree(p) == 2 * len(a.lines_at(p))
        assert len(set(a.coords)) == a.n_crossings


def _crossing_graph(a):
    h = nx.Graph()
    h.add_nodes_from(range(a.n_crossings))
    for seq in a.on_line:
        h.add_edges_from(zip(seq, seq[1:]))
    return h


@pytest.mark.parametrize("k", [2, 3, 4])
def test_routings_between_crossings_match_simple_paths(k):
    for a in arrangements(k):
        h = _crossing_graph(a)
        for s, t in itertools.permutations(range(a.n_crossings), 2):
            rs = enumerate_routings(a, None, s, t)
            want = {tuple(p) for p in nx.all_simple_paths(h, s, t)}
            got = set()
            for r in rs:
                walk = [s]
                for sg in r.supergaps:
                    seq = a.on_line[sg.line]
                    for g in sg.gaps:
                        nxt = seq[g] if sg.direction > 0 else seq[g - 1]
                        walk.append(nxt)
                got.add(tuple(walk))
            assert len(got) == len(rs)
            assert got == want


def test_max_h_limits_bends():
    a = next(x for x in arrangements(3) if x.n_crossings == 3)
    assert all(r.h <= 1 for r in enumerate_routings(a, None, 0, 1, max_h=1))
    assert len(enumerate_routings(a, None, 0, 1, max_h=1)) == 1
    assert len(enumerate_routings(a, None, 0, 1)) == 2


def test_closed_routing_in_triangle():
    a = next(x for x in arrangements(3) if x.n_crossings == 3)
    rs = enumerate_routings(a, None, 0, None, closed=True)
    # around the triangle in either direction
    assert len(rs) == 2
    assert all(r.h == 3 and r.start == r.end == 0 for r in rs)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_single_vertex_placements(k):
    for a in arrangements(k):
        assert len(list(place_high_degree(a, PlanarGraph.from_edges(1, [])))) == a.n_crossings


@pytest.mark.parametrize("k", [3, 4])
def test_edge_placements(k):
    for a in arrangements(k):
        want = sum(len(seq) * (len(seq) - 1) for seq in a.on_line)
        assert len(list(place_high_degree(a, path_graph(2)))) == want


def test_placement_path_cannot_fold_back():
    # a 3-vertex path on one line needs its middle vertex between the others
    a = next(x for x in arrangements(4) if x.n_crossings == 6)
    for pl in place_high_degree(a, path_graph(3)):
        ln = pl.edge_line[(0, 1)]
        if pl.edge_line[(1, 2)] == ln:
            pos = [a.position(ln, pl.at[v]) for v in range(3)]
            assert min(pos[0], pos[2]) < pos[1] < max(pos[0], pos[2])


def test_feasible_collection_rejects_shared_gap():
    a = next(x for x in arrangements(3) if x.n_crossings == 3)
    r = enumerate_routings(a, None, 0, 1, max_h=1)[0]
    assert feasible_collection([r], None, a)
    assert not feasible_collection([r, r], None, a)
