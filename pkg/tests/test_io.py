import json
from fractions import Fraction

import pytest

from segnum.graph import complete_graph, cycle_graph
from segnum.io import FormatError, dumps_instance, load_graph, loads_instance


def test_roundtrip_with_lists_and_positions():
    g = cycle_graph(4)
    lists = {e: frozenset({1, 2}) for e in g.edges}
    pos = {v: (Fraction(v, 3), Fraction(1, 2)) for v in range(4)}
    inst = loads_instance(dumps_instance(g, positions=pos, lists=lists, k=2))
    assert inst.graph.edges == g.edges
    assert inst.k == 2
    assert inst.lists == lists
    assert inst.positions == pos


def test_string_labels_keep_names():
    g = load_graph(json.dumps({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}))
    assert g.label(1) == "b"
    assert g.m == 2


def test_banana_block_expands():
    inst = loads_instance(json.dumps({"banana": {"kind": "path", "multiplicities": [2, 3]}}))
    assert inst.graph.m == 2 * (2 + 3)


def test_rotation_roundtrip():
    g = complete_graph(4)
    from segnum.graph import enumerate_embeddings
    g = g.with_rotation(next(enumerate_embeddings(g)))
    assert load_graph(dumps_instance(g)).rotation == g.rotation


@pytest.mark.parametrize("doc,where", [
    ({"vertices": [0, 1], "edges": [[0, 2]]}, "edges[0]"),
    ({"vertices": [0, 1], "edges": [[0, 0]]}, "edges[0]"),
    ({"vertices": [0, 0], "edges": []}, "vertices[1]"),
    ({"vertices": [0, 1], "edges": [[0, 1], [1, 0]]}, "edges[1]"),
    ({"vertices": [0, 1], "edges": [], "colour": 3}, "document"),
    ({"vertices": [0, 1], "edges": [], "k": -1}, "k"),
    ({"edges": []}, "document"),
])
def test_format_errors_name_the_location(doc, where):
    with pytest.raises(FormatError) as exc:
        loads_instance(json.dumps(doc))
    assert exc.value.where == where


def test_bad_json_reports_line():
    with pytest.raises(FormatError, match="line 1"):
        loads_instance("{")
