"""Graph / drawing file format.

A file is one JSON object.  Recognised fields::

    vertices   list of labels (strings or integers)
    edges      list of [label, label]
    rotation   {label: [label, ...]}   counterclockwise neighbour order
    lists      {"u-v": [int, ...]}      admissible indices in 1..k per edge
    k          integer budget
    positions  {label: [num, den, num, den]}   exact rational coordinates
    banana     {"kind": "path"|"cycle", "multiplicities": [...]}
               {"kind": "tree", "edges": [[label, label, multiplicity], ...]}

Unknown fields are rejected.  When ``banana`` is given, ``vertices`` and
``edges`` may be omitted and the expanded banana graph is used.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .graph import GraphError, PlanarGraph, norm_edge

KNOWN_FIELDS = {"vertices", "edges", "rotation", "lists", "k", "positions", "banana"}


class FormatError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Instance:
    graph: PlanarGraph
    lists: dict[tuple[int, int], frozenset[int]] | None = None
    k: int | None = None
    positions: dict[int, tuple[Fraction, Fraction]] | None = None
    banana: dict[str, Any] | None = None


def _label(x: Any, where: str) -> str:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(where, f"labels must be strings or integers, got {x!r}")
    return str(x)


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    if not isinstance(doc, dict):
        raise FormatError("document", "top level must be an object")
    unknown = set(doc) - KNOWN_FIELDS
    if unknown:
        raise FormatError("document", f"unknown field(s): {', '.join(sorted(unknown))}")

    banana = doc.get("banana")
    if banana is not None and "vertices" not in doc:
        from .banana import spec_from_block
        spec = spec_from_block(banana)
        graph = spec.graph()
    else:
        if "vertices" not in doc or "edges" not in doc:
            raise FormatError("document", "fields 'vertices' and 'edges' are required")
        graph = _parse_graph(doc)

    index = {graph.label(v): v for v in range(graph.n)}
    inst = Instance(graph, banana=banana)
    if "k" in doc:
        if not isinstance(doc["k"], int) or isinstance(doc["k"], bool) or doc["k"] < 0:
            raise FormatError("k", "must be a non-negative integer")
        inst.k = doc["k"]
    if "lists" in doc:
        inst.lists = _parse_lists(doc["lists"], graph, index, inst.k)
    if "positions" in doc:
        inst.positions = _parse_positions(doc["positions"], index)
    return inst


def _parse_graph(doc: dict) -> PlanarGraph:
    verts = doc["vertices"]
    if not isinstance(verts, list):
        raise FormatError("vertices", "must be a list")
    labels = [_label(x, f"vertices[{i}]") for i, x in enumerate(verts)]
    index: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in index:
            raise FormatError(f"vertices[{i}]", f"duplicate label {lab!r}")
        index[lab] = i
    edges = []
    seen = set()
    if not isinstance(doc["edges"], list):
        raise FormatError("edges", "must be a list")
    for i, pair in enumerate(doc["edges"]):
        where = f"edges[{i}]"
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(where, "an edge is a pair of labels")
        a, b = (_label(x, where) for x in pair)
        for lab in (a, b):
            if lab not in index:
                raise FormatError(where, f"dangling endpoint {lab!r}")
        if a == b:
            raise FormatError(where, f"self-loop at {a!r}")
        e = norm_edge(index[a], index[b])
        if e in seen:
            raise FormatError(where, f"duplicate edge {a}-{b}")
        seen.add(e)
        edges.append(e)
    rotation = None
    if "rotation" in doc:
        rot = doc["rotation"]
        if not isinstance(rot, dict):
            raise FormatError("rotation", "must be an object")
        rotation = [None] * len(labels)
        for lab, order in rot.items():
            if lab not in index:
                raise FormatError(f"rotation[{lab!r}]", "unknown vertex")
            if not isinstance(order, list):
                raise FormatError(f"rotation[{lab!r}]", "must be a list")
            try:
                rotation[index[lab]] = tuple(index[_label(x, f"rotation[{lab!r}]")] for x in order)
            except KeyError as exc:
                raise FormatError(f"rotation[{lab!r}]", f"unknown neighbour {exc.args[0]!r}") from None
        for v, r in enumerate(rotation):
            if r is None:
                rotation[v] = ()
    try:
        return PlanarGraph.from_edges(len(labels), edges, rotation, labels)
    except GraphError as exc:
        raise FormatError("rotation" if rotation else "edges", str(exc)) from None


def _parse_lists(raw: Any, graph: PlanarGraph, index: dict[str, int], k: int | None):
    if not isinstance(raw, dict):
        raise FormatError("lists", "must be an object")
    keys = {}
    for u, v in graph.edges:
        keys[f"{graph.label(u)}-{graph.label(v)}"] = (u, v)
        keys[f"{graph.label(v)}-{graph.label(u)}"] = (u, v)
    out = {}
    for key, values in raw.items():
        where = f"lists[{key!r}]"
        if key not in keys:
            raise FormatError(where, "not an edge of the graph")
        if not isinstance(values, list) or not values:
            raise FormatError(where, "must be a non-empty list of integers")
        for x in values:
            if not isinstance(x, int) or isinstance(x, bool) or x < 1 or (k is not None and x > k):
                raise FormatError(where, f"entry {x!r} outside 1..k")
        out[keys[key]] = frozenset(values)
    missing = [e for e in graph.edges if e not in out]
    if missing:
        u, v = missing[0]
        raise FormatError("lists", f"no list for edge {graph.label(u)}-{graph.label(v)}")
    return out


def _parse_positions(raw: Any, index: dict[str, int]):
    if not isinstance(raw, dict):
        raise FormatError("positions", "must be an object")
    out = {}
    for lab, val in raw.items():
        where = f"positions[{lab!r}]"
        if lab not in index:
            raise FormatError(where, "unknown vertex")
        if not (isinstance(val, list) and len(val) == 4 and all(isinstance(x, int) and not isinstance(x, bool) for x in val)):
            raise FormatError(where, "expected [num, den, num, den]")
        if val[1] == 0 or val[3] == 0:
            raise FormatError(where, "zero denominator")
        out[index[lab]] = (Fraction(val[0], val[1]), Fraction(val[2], val[3]))
    return out


def load_graph(text: str) -> PlanarGraph:
    return loads_instance(text).graph


def dumps_instance(graph: PlanarGraph, *, positions=None, lists=None, k=None, with_rotation=True) -> str:
    doc: dict[str, Any] = {
        "vertices": [graph.label(v) for v in range(graph.n)],
        "edges": [[graph.label(u), graph.label(v)] for u, v in graph.edges],
    }
    if with_rotation and graph.rotation is not None:
        doc["rotation"] = {graph.label(v): [graph.label(w) for w in graph.rotation[v]] for v in range(graph.n)}
    if lists is not None:
        doc["lists"] = {f"{graph.label(u)}-{graph.label(v)}": sorted(lists[(u, v)]) for u, v in graph.edges}
    if k is not None:
        doc["k"] = k
    if positions is not None:
        doc["positions"] = {
            graph.label(v): [positions[v][0].numerator, positions[v][0].denominator,
                             positions[v][1].numerator, positions[v][1].denominator]
            for v in range(graph.n)
        }
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
