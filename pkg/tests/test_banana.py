import pytest

from segnum.banana import (
    BananaCycleSpec,
    BananaError,
    BananaPathSpec,
    BananaTreeSpec,
    OutOfTheoremScope,
    draw_banana,
    draw_banana_cycle,
    draw_banana_path,
    draw_banana_tree,
    seg_banana,
    seg_banana_cycle,
    seg_banana_path,
    seg_banana_path_printed,
    seg_banana_tree,
    spec_from_block,
    star_tree,
)
from segnum.drawing import segment_count, validate_drawing
from segnum.graph import banana_graph


@pytest.mark.parametrize("k,value", [(1, 1), (2, 3), (3, 4), (4, 6), (5, 7), (6, 9), (9, 13)])
def test_single_banana(k, value):
    assert seg_banana(k) == value
    d = draw_banana(k)
    assert d.graph.edges == banana_graph(k).edges
    assert validate_drawing(d, check_rotation=False)
    assert segment_count(d) == value


def test_path_capacities():
    spec = BananaPathSpec((3, 1, 2))
    assert spec.a == (1, 1, 1, 1)
    assert spec.s == (2, 0, 1)


# values from the closed form, cross-checked against the grid oracle
# (W=6) for every spec with at most 8 vertices
@pytest.mark.parametrize("ms,value", [
    ((1,), 1), ((2,), 3), ((3,), 4), ((1, 1), 1), ((2, 3), 5), ((1, 2, 1), 3),
    ((3, 1, 2), 6), ((2, 2, 2), 5), ((4, 1, 4), 11), ((9,), 13), ((2, 2), 4),
])
def test_banana_path(ms, value):
    assert seg_banana_path(ms) == value
    d = draw_banana_path(ms)
    assert validate_drawing(d, check_rotation=False)
    assert segment_count(d) == value


@pytest.mark.parametrize("ms,printed", [((9,), 12), ((2, 2), 3)])
def test_printed_formula_is_one_short(ms, printed):
    assert seg_banana_path_printed(ms) == printed == seg_banana_path(ms) - 1


@pytest.mark.parametrize("spec,value", [
    (BananaTreeSpec(3, ((0, 1, 2), (1, 2, 3))), 5),
    (star_tree([1, 1, 1]), 2),
    (star_tree([2, 2, 5]), 9),
    (star_tree([2, 1, 1, 1]), 4),
    (BananaTreeSpec(5, ((0, 1, 1), (1, 2, 3), (1, 3, 1), (3, 4, 2))), 6),
])
def test_banana_tree(spec, value):
    assert seg_banana_tree(spec) == value
    d = draw_banana_tree(spec)
    assert validate_drawing(d, check_rotation=False)
    assert segment_count(d) == value


def test_tree_on_a_path_agrees_with_path_formula():
    for ms in [(2, 3), (3, 1, 2), (4, 1, 4), (1, 5, 2, 2)]:
        assert seg_banana_tree(BananaPathSpec(ms).tree()) == seg_banana_path(ms)


@pytest.mark.parametrize("ms,value", [((2,) * 5, 5), ((2,) * 6, 6)])
def test_banana_cycle(ms, value):
    spec = BananaCycleSpec(ms)
    assert seg_banana_cycle(spec) == value
    d = draw_banana_cycle(spec)
    assert validate_drawing(d, check_rotation=False)
    assert segment_count(d) == value


@pytest.mark.parametrize("ms", [(2, 2, 2, 2), (2, 2, 1, 2, 2)])
def test_cycle_out_of_scope(ms):
    with pytest.raises(OutOfTheoremScope):
        BananaCycleSpec(ms)


@pytest.mark.parametrize("n,edges", [(3, ((0, 1, 1), (0, 1, 2))), (3, ((0, 1, 1),)), (2, ((0, 1, 0),))])
def test_bad_trees(n, edges):
    with pytest.raises(BananaError):
        BananaTreeSpec(n, edges)


def test_spec_from_block():
    assert spec_from_block({"kind": "path", "multiplicities": [2, 2]}) == BananaPathSpec((2, 2))
    t = spec_from_block({"kind": "tree", "edges": [["r", "a", 2], ["r", "b", 1]]})
    assert t.n == 3 and seg_banana_tree(t) == seg_banana_path((2, 1))
    with pytest.raises(BananaError):
        spec_from_block({"kind": "wheel"})


# a path of 1-bananas is a plain path; seven collinear vertices need W=7
@pytest.mark.parametrize("spec,width", [
    (star_tree([1, 1]), 6),
    (star_tree([1, 2]), 6),
    (star_tree([2, 2]), 6),
    (star_tree([1, 3]), 6),
    (star_tree([1, 1, 1]), 6),
    (BananaPathSpec((1, 1, 1)).tree(), 7),
    (BananaPathSpec((2, 1)).tree(), 6),
], ids=str)
def test_small_trees_against_oracle(spec, width):
    from segnum.oracle import OracleConfig, oracle_seg
    g = spec.graph()
    assert g.n <= 7
    assert seg_banana_tree(spec) == oracle_seg(g, OracleConfig(width)).value
