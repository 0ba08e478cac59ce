import pytest

from segnum.drawing import segment_count, validate_drawing
from segnum.graph import (
    PlanarGraph,
    banana_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    enumerate_embeddings,
    path_graph,
    star_graph,
)
from segnum.ilp import solve_ilp
from segnum.realizability import GridComplete
from segnum.vc import (
    VcCapError,
    _vertex_pairings,
    build_boomerangs,
    candidates,
    check_gadget_realizability,
    enumerate_c_subsets,
    enumerate_pairings,
    equivalence_classes,
    is_vertex_cover,
    reduce_graph,
    segment_number_by_vc,
    segment_number_vc,
    vertex_cover,
)


@pytest.mark.parametrize("g,size", [
    (star_graph(5), 1),
    (cycle_graph(4), 2),
    (cycle_graph(5), 3),
    (complete_graph(4), 3),
    (banana_graph(6), 2),
    (path_graph(5), 2),
])
def test_vertex_cover_size(g, size):
    c = vertex_cover(g)
    assert len(c) == size and is_vertex_cover(g, c)


def test_classes_of_k25():
    g = complete_bipartite(2, 5)
    cl = equivalence_classes(g, vertex_cover(g))
    assert [(c.j, len(c.members)) for c in cl.classes] == [(2, 5)]


def test_classes_of_star():
    g = star_graph(4)
    cl = equivalence_classes(g, {0})
    assert [(c.j, c.members) for c in cl.classes] == [(1, (1, 2, 3, 4))]
    assert cl.class_of(0) is None


def test_classes_reject_big_three_class():
    g = complete_bipartite(3, 3)
    with pytest.raises(ValueError, match="K_3,3"):
        equivalence_classes(g, {0, 1, 2})


def test_not_a_cover():
    with pytest.raises(ValueError):
        equivalence_classes(path_graph(4), {0})


def test_reduce_trims_two_classes():
    g = banana_graph(9)
    red = reduce_graph(g, equivalence_classes(g, vertex_cover(g)))
    assert red.graph.n == 4
    (t,) = red.two
    assert len(t.members) == 9 and len(t.kept) == 2
    assert red.graph.n <= red.bound()


def test_reduce_turns_one_classes_into_leaves():
    g = PlanarGraph.from_edges(6, [(0, 1), (0, 2), (0, 3), (4, 3), (4, 5)])
    red = reduce_graph(g, equivalence_classes(g, vertex_cover(g)))
    assert sorted(len(v) for v in red.leaves.values()) == [1, 2]


def test_c_subsets_of_banana():
    g = banana_graph(3)
    red = reduce_graph(g, equivalence_classes(g, vertex_cover(g)))
    subs = list(enumerate_c_subsets(red))
    assert [s for s, _ in subs] == [(), (0,)]
    assert subs[1][1].m == subs[0][1].m + 1


def test_boomerangs_for_one_contiguous_class():
    g = banana_graph(3)
    red = reduce_graph(g, equivalence_classes(g, vertex_cover(g)))
    sub, g2c = next(enumerate_c_subsets(red))
    gg = build_boomerangs(red, sub, g2c, next(enumerate_embeddings(g2c)))
    assert len(gg.boomerangs) == 2
    assert len(gg.corner_of) == 4
    for b in gg.boomerangs:
        a, c0, c, c1 = b.quad
        assert {a, c} == {b.v, b.w}


def test_vertex_pairings_of_four_plain_edges():
    items = [("e", i) for i in range(4)]
    ps = _vertex_pairings(items)
    # empty, six single pairs and the one crossing matching
    assert len(ps) == 8
    assert ((("e", 0), ("e", 2)), (("e", 1), ("e", 3))) in ps
    assert ((("e", 0), ("e", 1)), (("e", 2), ("e", 3))) not in ps


def test_boomerang_may_take_several_partners():
    items = [("b", 0), ("e", 1), ("e", 2)]
    ps = _vertex_pairings(items)
    assert ((("b", 0), ("e", 1)), (("b", 0), ("e", 2))) in ps
    assert not any(len(p) == 2 and ("b", 0) not in p[0] + p[1] for p in ps)


def test_forbidden_pair_is_skipped():
    items = [("b", 0), ("e", 5)]
    assert _vertex_pairings(items, frozenset({frozenset(items)})) == [()]


def test_empty_pairing_gadget_is_sat():
    g = banana_graph(2)
    red = reduce_graph(g, equivalence_classes(g, vertex_cover(g)))
    sub, g2c = next(enumerate_c_subsets(red))
    gg = build_boomerangs(red, sub, g2c, next(enumerate_embeddings(g2c)))
    pg = next(pg for pg in enumerate_pairings(gg) if not pg.aligned)
    v = check_gadget_realizability(pg, GridComplete(4))
    assert v.sat


def test_ilp_of_star_places_leaves_in_pairs():
    g = star_graph(4)
    _, cands, stats = candidates(g)
    assert stats["cover"] == 1
    best = cands[0]
    assert best.claimed == 2
    assert solve_ilp(best.plan.model).value == best.sol.value == 2


def test_claims_are_lower_bounds_for_bananas():
    for k, want in [(2, 3), (3, 4)]:
        _, cands, _ = candidates(banana_graph(k))
        assert cands[0].claimed == want


@pytest.mark.parametrize("g,value", [
    (path_graph(3), 1),
    (star_graph(3), 2),
    (star_graph(4), 2),
    (PlanarGraph.from_edges(4, [(0, 1), (2, 3)]), 2),
    (banana_graph(2), 3),
])
def test_segment_number_vc(g, value):
    r = segment_number_vc(g)
    assert r.value == value
    assert not r.qualified
    assert validate_drawing(r.witness, check_rotation=False)
    assert segment_count(r.witness) == value


def test_edgeless():
    assert segment_number_vc(PlanarGraph.from_edges(3, [])).value == 0


def test_decision_wrapper():
    ok, res = segment_number_by_vc(star_graph(4), 2)
    assert ok and res.decide(2) == (True, False)
    ok, res = segment_number_by_vc(star_graph(4), 1)
    assert not ok and res.decide(1) == (False, False)


def test_cap():
    with pytest.raises(VcCapError):
        candidates(complete_graph(4), cap=2)
