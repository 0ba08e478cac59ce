"""Polynomial atoms and the two existential formulas over point coordinates.

Point ``i`` owns the variables ``2i`` (x) and ``2i + 1`` (y).  A formula
is a conjunction of clauses; each clause is a disjunction of conjunctions
of atoms.  That is enough structure for the non-crossing relation, the
boomerang product and the rotation triples.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from ..graph import PlanarGraph, norm_edge

Monomial = tuple[int, ...]


class Poly:
    """Sparse polynomial with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, int] | None = None):
        self.terms = {m: c for m, c in (terms or {}).items() if c != 0}

    @staticmethod
    def var(i: int) -> Poly:
        return Poly({(i,): 1})

    @staticmethod
    def const(c: int) -> Poly:
        return Poly({(): c})

    def __add__(self, other: Poly) -> Poly:
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    def __neg__(self) -> Poly:
        return Poly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        out: dict[Monomial, int] = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return Poly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def degree(self) -> int:
        return max((len(m) for m in self.terms), default=0)

    @property
    def max_coefficient(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def variables(self) -> set[int]:
        return {v for m in self.terms for v in m}

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda mc: (len(mc[0]), mc[0]))

    def to_python(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"v[{i}]" for i in m]
            if c != 1 or not factors:
                factors.insert(0, f"({c})")
            parts.append("*".join(factors))
        return "(" + " + ".join(parts) + ")"

    def evaluate(self, values) -> object:
        total = 0
        for m, c in self.terms.items():
            t = c
            for i in m:
                t = t * values[i]
            total = total + t
        return total

    def __repr__(self) -> str:
        return f"Poly({self.to_python()})"


RELATIONS = (">", ">=", "=")


@dataclass(frozen=True)
class Atom:
    poly: Poly
    rel: str

    def __post_init__(self):
        if self.rel not in RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")

    def holds(self, values) -> bool:
        x = self.poly.evaluate(values)
        return x > 0 if self.rel == ">" else (x >= 0 if self.rel == ">=" else x == 0)


@dataclass(frozen=True)
class Clause:
    """Disjunction of conjunctions."""

    disjuncts: tuple[tuple[Atom, ...], ...]
    tag: str = ""
    meta: tuple = ()

    def points(self) -> set[int]:
        return {v // 2 for conj in self.disjuncts for a in conj for v in a.poly.variables()}

    def holds(self, values) -> bool:
        return any(all(a.holds(values) for a in conj) for conj in self.disjuncts)

    @property
    def atoms(self) -> list[Atom]:
        return [a for conj in self.disjuncts for a in conj]


@dataclass
class RealFormula:
    n_points: int
    clauses: list[Clause] = field(default_factory=list)
    point_names: list[str] = field(default_factory=list)
    graph: PlanarGraph | None = None        # the first graph.n points are its vertices
    immediate: bool | None = None           # short-circuit verdict, no atoms needed
    rotation_invariant: bool = True         # truth preserved by quarter turns of the plane
    equal_choice: dict[int, tuple[int, ...]] = field(default_factory=dict)
    collinear: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def n_variables(self) -> int:
        return 2 * self.n_points

    @property
    def atom_count(self) -> int:
        return sum(len(c.atoms) for c in self.clauses)

    @property
    def max_degree(self) -> int:
        return max((a.poly.degree for c in self.clauses for a in c.atoms), default=0)

    @property
    def max_coefficient(self) -> int:
        return max((a.poly.max_coefficient for c in self.clauses for a in c.atoms), default=0)

    def holds(self, values) -> bool:
        if self.immediate is not None:
            return self.immediate
        return all(c.holds(values) for c in self.clauses)

    def failing(self, values) -> list[Clause]:
        return [c for c in self.clauses if not c.holds(values)]


# ---------------------------------------------------------------------------
# geometric building blocks
# ---------------------------------------------------------------------------


def X(p: int) -> Poly:
    return Poly.var(2 * p)


def Y(p: int) -> Poly:
    return Poly.var(2 * p + 1)


def chi_poly(a: int, b: int, c: int) -> Poly:
    return (X(b) - X(a)) * (Y(c) - Y(a)) - (Y(b) - Y(a)) * (X(c) - X(a))


def dot_poly(o: int, a: int, b: int) -> Poly:
    """(a - o) . (b - o)"""
    return (X(a) - X(o)) * (X(b) - X(o)) + (Y(a) - Y(o)) * (Y(b) - Y(o))


def dir_dot(p: int, q: int, s: int, t: int) -> Poly:
    """(q - p) . (t - s)"""
    return (X(q) - X(p)) * (X(t) - X(s)) + (Y(q) - Y(p)) * (Y(t) - Y(s))


def gt(p: Poly) -> Atom:
    return Atom(p, ">")


def ge(p: Poly) -> Atom:
    return Atom(p, ">=")


def eq(p: Poly) -> Atom:
    return Atom(p, "=")


def distinct_clause(a: int, b: int) -> Clause:
    return Clause(((gt(X(a) - X(b)),), (gt(X(b) - X(a)),),
                   (gt(Y(a) - Y(b)),), (gt(Y(b) - Y(a)),)), "distinct", (a, b))


def same_point(a: int, b: int) -> tuple[Atom, ...]:
    return (eq(X(a) - X(b)), eq(Y(a) - Y(b)))


def not_on_closed_segment(p: int, a: int, b: int) -> tuple[tuple[Atom, ...], ...]:
    c = chi_poly(a, b, p)
    return ((gt(c),), (gt(-c),), (gt(-dot_poly(a, p, b)),), (gt(-dot_poly(b, p, a)),))


def no_crossing_clause(u: int, v: int, s: int, t: int) -> Clause:
    """Closed segments uv and st are disjoint (the non-crossing relation D)."""
    c1, c2 = chi_poly(u, v, s), chi_poly(u, v, t)
    c3, c4 = chi_poly(s, t, u), chi_poly(s, t, v)
    len_uv = dot_poly(u, v, v)
    disj = (
        (gt(c1 * c2),),
        (gt(c3 * c4),),
        # collinear, both of s and t beyond v or both before u
        (eq(c1), eq(c2), gt(dot_poly(u, s, v) - len_uv), gt(dot_poly(u, t, v) - len_uv)),
        (eq(c1), eq(c2), gt(-dot_poly(u, s, v)), gt(-dot_poly(u, t, v))),
    )
    return Clause(disj, "no-crossing", (u, v, s, t))


def no_overlap_clause(v: int, a: int, b: int) -> Clause:
    """Edges va and vb do not run along each other."""
    c = chi_poly(v, a, b)
    return Clause(((gt(c),), (gt(-c),), (gt(-dot_poly(v, a, b)),)), "no-overlap", (v, a, b))


def ccw_triple_clause(v: int, a: int, b: int, c: int) -> Clause:
    """Rays va, vb, vc appear counterclockwise around v: at least two of the
    three consecutive turns are strictly left turns."""
    t1, t2, t3 = gt(chi_poly(v, a, b)), gt(chi_poly(v, b, c)), gt(chi_poly(v, c, a))
    return Clause(((t1, t2), (t2, t3), (t3, t1)), "rotation", (v, a, b, c))


def _validity_clauses(g: PlanarGraph) -> list[Clause]:
    out = [distinct_clause(a, b) for a, b in combinations(range(g.n), 2)]
    edges = list(g.edges)
    for i, (u, v) in enumerate(edges):
        for s, t in edges[i + 1:]:
            shared = {u, v} & {s, t}
            if shared:
                w = shared.pop()
                a = v if u == w else u
                b = t if s == w else s
                out.append(no_overlap_clause(w, a, b))
            else:
                out.append(no_crossing_clause(u, v, s, t))
    for w in range(g.n):
        if g.degree(w) == 0:
            for u, v in edges:
                out.append(Clause(not_on_closed_segment(w, u, v), "vertex-off-edge", (w, u, v)))
    return out


# ---------------------------------------------------------------------------
# segment formula
# ---------------------------------------------------------------------------


def build_segment_formula(g: PlanarGraph, k: int) -> RealFormula:
    """Formula satisfiable iff ``g`` has a drawing with at most ``k`` segments.

    Segments are pairs of points (s_j, t_j) pinned to vertices.  Every edge
    lies on a closed segment, and every vertex on segment j other than t_j
    has a neighbour further along it, so the segment's edges form one
    gapless chain.
    """
    n = g.n
    if k > 3 * n - 6 or g.m == 0:
        return RealFormula(n_points=0, immediate=True, graph=g)
    if k <= 0:
        return RealFormula(n_points=0, immediate=False, graph=g)
    names = [f"v{g.label(v)}" for v in range(n)]
    f = RealFormula(n_points=n + 2 * k, graph=g)
    for j in range(k):
        names += [f"s{j}", f"t{j}"]
    f.point_names = names
    f.clauses += _validity_clauses(g)
    seg = [(n + 2 * j, n + 2 * j + 1) for j in range(k)]
    for s, t in seg:
        f.clauses.append(distinct_clause(s, t))
        for p in (s, t):
            f.clauses.append(Clause(tuple(same_point(p, v) for v in range(n)), "endpoint", (p,)))
            f.equal_choice[p] = tuple(range(n))

    def on_seg(x, s, t):
        return (eq(chi_poly(s, t, x)), ge(dot_poly(s, x, t)), ge(dot_poly(t, x, s)))

    for u, v in g.edges:
        f.clauses.append(Clause(tuple(on_seg(u, s, t) + on_seg(v, s, t) for s, t in seg),
                                "edge-on-segment", (u, v)))
    for s, t in seg:
        for x in range(n):
            disj = list(not_on_closed_segment(x, s, t))
            disj.append(same_point(x, t))
            for y in g.adj[x]:
                disj.append((eq(chi_poly(s, t, y)), gt(dir_dot(x, y, s, t)), ge(dot_poly(t, y, s))))
            f.clauses.append(Clause(tuple(disj), "gapless", (s, t, x)))
    return f


# ---------------------------------------------------------------------------
# alignment formula
# ---------------------------------------------------------------------------


class RejectedInstance(ValueError):
    """The instance is malformed (not merely unsatisfiable)."""


@dataclass(frozen=True)
class AlignmentInstance:
    graph: PlanarGraph
    aligned: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()
    boomerangs: tuple[tuple[int, int, int, int], ...] = ()   # (a, b, c, d) with diagonal (a, c)

    def validate(self) -> None:
        g = self.graph
        for e, f in self.aligned:
            e, f = norm_edge(*e), norm_edge(*f)
            if not (g.has_edge(*e) and g.has_edge(*f)):
                raise RejectedInstance(f"aligned pair {e}, {f} uses a non-edge")
            if e == f or not set(e) & set(f):
                raise RejectedInstance(f"aligned pair {e}, {f} is not incident")
        for q in self.boomerangs:
            a, b, c, d = q
            if len(set(q)) != 4 or not all(g.has_edge(x, y) for x, y in ((a, b), (b, c), (c, d), (d, a))):
                raise RejectedInstance(f"{q} is not a 4-cycle")


def build_alignment_formula(inst: AlignmentInstance) -> RealFormula:
    inst.validate()
    g = inst.graph
    f = RealFormula(n_points=g.n, graph=g, point_names=[f"v{g.label(v)}" for v in range(g.n)])
    f.clauses += _validity_clauses(g)
    if g.rotation is not None:
        for v in range(g.n):
            rot = g.rotation[v]
            for i in range(1, len(rot) - 1):
                f.clauses.append(ccw_triple_clause(v, rot[0], rot[i], rot[i + 1]))
    for e, h in inst.aligned:
        v = (set(e) & set(h)).pop()
        u = e[0] if e[1] == v else e[1]
        w = h[0] if h[1] == v else h[1]
        f.clauses.append(Clause(((eq(chi_poly(u, v, w)),),), "aligned", (u, v, w)))
        f.collinear.append((u, v, w))
    for a, b, c, d in inst.boomerangs:
        f.clauses.append(Clause(((gt(chi_poly(a, b, c) * chi_poly(a, d, c)),),), "boomerang", (a, b, c, d)))
    return f
