import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segnum.drawing import (
    Drawing,
    InvalidDrawingError,
    aligned_pairs,
    ccw_order,
    chi,
    export_svg,
    line_through,
    random_geometric_drawing,
    random_grid_drawing,
    same_cyclic_order,
    segment_count,
    segments_of,
    supporting_lines,
    validate_drawing,
)
from segnum.graph import PlanarGraph, complete_graph, cycle_graph, path_graph, star_graph


def segments_by_line(d):
    """Segment count from scratch: per supporting line, count runs of touching edges."""
    runs = {}
    for u, v in d.graph.edges:
        ln = line_through(d[u], d[v])
        runs.setdefault(ln, []).append(tuple(sorted((d[u], d[v]))))
    total = 0
    for ivs in runs.values():
        ivs.sort()
        end = None
        for a, b in ivs:
            if end is None or a > end:
                total += 1
                end = b
            else:
                end = max(end, b)
    return total


@pytest.mark.parametrize("a,b,c,sign", [
    ((0, 0), (1, 0), (0, 1), 1),
    ((0, 0), (0, 1), (1, 0), -1),
    ((0, 0), (1, 1), (2, 2), 0),
])
def test_chi_sign(a, b, c, sign):
    v = chi(a, b, c)
    assert (v > 0) - (v < 0) == sign


def test_straight_path_is_one_segment():
    d = Drawing.of(path_graph(4), [(0, 0), (1, 1), (2, 2), (5, 5)])
    s = segments_of(d)
    assert s.count == 1
    assert s.segments == ((0, 1, 2, 3),)
    assert aligned_pairs(d) == 2


def test_bent_path():
    d = Drawing.of(path_graph(3), [(0, 0), (1, 0), (1, 1)])
    assert segment_count(d) == 2


@pytest.mark.parametrize("coords,violation", [
    ([(0, 0), (0, 0), (1, 1)], "coincident"),
    ([(0, 0), (2, 0), (1, 0)], "vertex-on-edge"),
    ([(0, 0), (2, 0), (1, -1), (1, 1)], "crossing"),
])
def test_validation_failures(coords, violation):
    edges = [(0, 1), (1, 2)] if len(coords) == 3 else [(0, 1), (2, 3)]
    d = Drawing.of(PlanarGraph.from_edges(len(coords), edges), coords)
    rep = validate_drawing(d)
    assert not rep.ok and rep.violation == violation
    with pytest.raises(InvalidDrawingError):
        segment_count(d)


def test_overlap_at_shared_vertex():
    d = Drawing.of(PlanarGraph.from_edges(3, [(0, 1), (0, 2)]), [(0, 0), (1, 0), (2, 0)])
    # 1 lies on edge 0-2, caught before the overlap test
    assert validate_drawing(d).violation == "vertex-on-edge"


def test_rotation_checked_when_embedded():
    g = star_graph(3)
    d = Drawing.of(g, [(0, 0), (1, 0), (0, 1), (-1, -1)])
    order = tuple(ccw_order(d[0], {w: d[w] for w in g.adj[0]}))
    assert order == (1, 2, 3)
    assert validate_drawing(Drawing(g.with_rotation([order, (0,), (0,), (0,)]), d.position))
    bad = g.with_rotation([(1, 3, 2), (0,), (0,), (0,)])
    assert validate_drawing(Drawing(bad, d.position)).violation == "rotation"


def test_same_cyclic_order():
    assert same_cyclic_order((1, 2, 3), (3, 1, 2))
    assert not same_cyclic_order((1, 2, 3), (1, 3, 2))


def test_supporting_lines_merge_collinear_segments():
    # two disjoint edges on the x axis share a line but not a segment
    d = Drawing.of(PlanarGraph.from_edges(4, [(0, 1), (2, 3)]), [(0, 0), (1, 0), (3, 0), (4, 0)])
    assert segment_count(d) == 2
    assert len(supporting_lines(d)) == 1


def test_svg_export_mentions_every_vertex():
    d = Drawing.of(complete_graph(3), [(0, 0), (2, 0), (Fraction(1, 2), 3)])
    svg = export_svg(d)
    assert svg.startswith("<svg") and svg.count("<circle") == 3


@settings(max_examples=150, deadline=None)
@given(st.integers(3, 7), st.integers(0, 10**6))
def test_segments_equal_edges_minus_aligned_hypothesis(n, seed):
    d = random_geometric_drawing(n, 4, random.Random(seed))
    assert segment_count(d) == d.graph.m - aligned_pairs(d)
    assert segment_count(d) == segments_by_line(d)


@pytest.mark.parametrize("g", [cycle_graph(5), complete_graph(4), star_graph(4)])
def test_random_grid_drawing_is_valid(g, rng):
    d = random_grid_drawing(g, 6, rng)
    assert validate_drawing(d, check_rotation=False)
    assert segments_by_line(d) == segment_count(d)
