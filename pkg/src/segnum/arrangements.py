"""Combinatorial line arrangements, gaps, supergaps and routings.

An arrangement is stored combinatorially: which lines meet at each
crossing point and the order of the crossings along every line.  Every
enumerated arrangement also carries an exact rational witness (one
equation ``a x + b y = c`` per line), which fixes the plane graph G_A and
its rotation.

Gaps on a line with crossings q_0 .. q_{c-1} are numbered 0 .. c; gap i
runs from q_{i-1} to q_i.  Gaps 0 and c are the two half-lines.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping

from .drawing import ccw_order, pt
from .graph import PlanarGraph

MAX_LINES = 4


class ArrangementCapError(ValueError):
    pass


@dataclass(frozen=True)
class Gap:
    line: int
    index: int
    a: int | None       # crossing at the lower end (None for a half-line)
    b: int | None

    @property
    def bounded(self) -> bool:
        return self.a is not None and self.b is not None


@dataclass(frozen=True)
class Arrangement:
    k: int
    points: tuple[frozenset[int], ...]
    on_line: tuple[tuple[int, ...], ...]
    witness: tuple[tuple[Fraction, Fraction, Fraction], ...] = ()
    verdict: str = "sat"

    @property
    def n_crossings(self) -> int:
        return len(self.points)

    def lines_at(self, p: int) -> frozenset[int]:
        return self.points[p]

    def position(self, line: int, p: int) -> int:
        return self.on_line[line].index(p)

    def gap(self, line: int, index: int) -> Gap:
        seq = self.on_line[line]
        a = seq[index - 1] if index >= 1 else None
        b = seq[index] if index < len(seq) else None
        return Gap(line, index, a, b)

    def gaps(self) -> list[Gap]:
        return [self.gap(ln, i) for ln in range(self.k) for i in range(len(self.on_line[ln]) + 1)]

    def step(self, line: int, p: int, direction: int) -> tuple[int, int | None]:
        """Gap index entered when leaving ``p`` along ``line`` and the crossing reached (None for a half-line)."""
        i = self.position(line, p)
        seq = self.on_line[line]
        if direction > 0:
            return i + 1, (seq[i + 1] if i + 1 < len(seq) else None)
        return i, (seq[i - 1] if i >= 1 else None)

    @cached_property
    def coords(self) -> tuple:
        out = []
        for ls in self.points:
            i, j = sorted(ls)[:2]
            out.append(_meet(self.witness[i], self.witness[j]))
        return tuple(out)

    def direction(self, line: int) -> tuple[Fraction, Fraction]:
        """Direction of travel towards higher positions along ``line``."""
        a, b, _ = self.witness[line]
        seq = self.on_line[line]
        if len(seq) >= 2:
            (x0, y0), (x1, y1) = self.coords[seq[0]], self.coords[seq[1]]
            if (x1 - x0) * b + (y1 - y0) * (-a) < 0:
                return (-b, a)
        return (b, -a)

    def canonical_key(self) -> tuple:
        return canonical_key(self.k, self.points, self.on_line)

    def graph(self) -> PlanarGraph:
        """G_A: crossings, then two leaves per line, with the inherited rotation."""
        c = self.n_crossings
        edges = []
        leaf_pos = {}
        for ln, seq in enumerate(self.on_line):
            l0, l1 = c + 2 * ln, c + 2 * ln + 1
            chain = [l0, *seq, l1]
            edges += list(zip(chain, chain[1:]))
            dx, dy = self.direction(ln)
            if seq:
                for leaf, end, sgn in ((l0, seq[0], -1), (l1, seq[-1], 1)):
                    x, y = self.coords[end]
                    leaf_pos[leaf] = (x + sgn * dx, y + sgn * dy)
            else:
                base = _point_on(self.witness[ln])
                leaf_pos[l0] = base
                leaf_pos[l1] = (base[0] + dx, base[1] + dy)
        n = c + 2 * self.k
        g = PlanarGraph.from_edges(n, edges)
        pos = {p: pt(*self.coords[p]) for p in range(c)}
        pos.update({v: pt(*xy) for v, xy in leaf_pos.items()})
        rot = tuple(tuple(ccw_order(pos[v], {w: pos[w] for w in g.adj[v]})) for v in range(n))
        return g.with_rotation(rot)

    def dump(self) -> str:
        names = ["".join(map(str, sorted(ls))) for ls in self.points]
        rows = [f"k={self.k} crossings={self.n_crossings} verdict={self.verdict}"]
        for ln, seq in enumerate(self.on_line):
            rows.append(f"L{ln}: " + (" ".join(f"p{names[p]}" for p in seq) if seq else "-"))
        return "\n".join(rows) + "\n"


def _meet(l1, l2):
    a1, b1, c1 = l1
    a2, b2, c2 = l2
    det = a1 * b2 - a2 * b1
    return ((c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det)


def _point_on(line):
    a, b, c = line
    return (c / a, Fraction(0)) if a != 0 else (Fraction(0), c / b)


def canonical_key(k: int, points, on_line) -> tuple:
    best = None
    for perm in itertools.permutations(range(k)):
        name = [tuple(sorted(perm[x] for x in ls)) for ls in points]
        rows = [None] * k
        for ln, seq in enumerate(on_line):
            s = tuple(name[p] for p in seq)
            rows[perm[ln]] = min(s, s[::-1])
        key = tuple(rows)
        if best is None or key < best:
            best = key
    return best


# ---------------------------------------------------------------------------
# candidate generation
# ---------------------------------------------------------------------------


def _set_partitions(items: list[int]) -> Iterator[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _crossing_systems(k: int, cls: dict[int, int]) -> Iterator[list[frozenset[int]]]:
    """Every way to group the crossing pairs of non-parallel lines into points."""
    pairs = [(i, j) for i, j in itertools.combinations(range(k), 2) if cls[i] != cls[j]]

    def rec(covered: frozenset, pts: list[frozenset[int]]):
        todo = [p for p in pairs if p not in covered]
        if not todo:
            yield list(pts)
            return
        i, j = todo[0]
        others = [l for l in range(k) if l not in (i, j)]
        for r in range(len(others) + 1):
            for extra in itertools.combinations(others, r):
                P = (i, j) + extra
                if len({cls[x] for x in P}) != len(P):
                    continue
                new = {tuple(sorted(q)) for q in itertools.combinations(P, 2)}
                if new & covered:
                    continue
                yield from rec(covered | new, pts + [frozenset(P)])

    yield from rec(frozenset(), [])


def _orders(seq: list[int]) -> Iterator[tuple[int, ...]]:
    if len(seq) <= 1:
        yield tuple(seq)
        return
    for perm in itertools.permutations(seq):
        if perm[0] < perm[-1]:
            yield perm


def candidates(k: int) -> Iterator[tuple[tuple[frozenset[int], ...], tuple[tuple[int, ...], ...]]]:
    """All combinatorial candidates (points, per-line orders) before the realizability filter."""
    for part in _set_partitions(list(range(k))):
        cls = {l: ci for ci, block in enumerate(part) for l in block}
        for pts in _crossing_systems(k, cls):
            pts = tuple(pts)
            per_line = [[p for p, ls in enumerate(pts) if l in ls] for l in range(k)]
            for combo in itertools.product(*(list(_orders(s)) for s in per_line)):
                yield pts, tuple(combo)


# ---------------------------------------------------------------------------
# realizability: constructive random sampling with exact arithmetic
# ---------------------------------------------------------------------------


def _realize(k: int, pts, cls_of: dict[int, int], rng: random.Random, span: int):
    """One random exact realisation respecting parallel classes and concurrency,
    or None when it accidentally creates extra incidences."""
    dirs = {}
    for c in sorted(set(cls_of.values())):
        while True:
            d = (rng.randint(-span, span), rng.randint(-span, span))
            if d == (0, 0):
                continue
            if all(d[0] * e[1] - d[1] * e[0] != 0 for e in dirs.values()):
                dirs[c] = d
                break
    lines: dict[int, tuple] = {}
    order = list(range(k))
    rng.shuffle(order)
    # lines through a multi-line point: the first two are free, the rest pass through their meet
    for ln in order:
        dx, dy = dirs[cls_of[ln]]
        a, b = Fraction(-dy), Fraction(dx)
        forced = None
        for ls in pts:
            if ln in ls:
                fixed = [m for m in ls if m in lines]
                if len(fixed) >= 2:
                    x, y = _meet(lines[fixed[0]], lines[fixed[1]])
                    val = a * x + b * y
                    if forced is not None and forced != val:
                        return None
                    forced = val
        lines[ln] = (a, b, forced if forced is not None else Fraction(rng.randint(-span * 3, span * 3)))
    return tuple(lines[i] for i in range(k))


def _type_of(k: int, witness) -> tuple | None:
    """(points, on_line) read off an exact line set, with points in a canonical order."""
    where: dict[tuple, set[int]] = {}
    for i, j in itertools.combinations(range(k), 2):
        a1, b1, _ = witness[i]
        a2, b2, _ = witness[j]
        if a1 * b2 - a2 * b1 == 0:
            if witness[i][2] * (a2 if a2 else b2) == witness[j][2] * (a1 if a1 else b1):
                return None  # coincident lines
            continue
        where.setdefault(_meet(witness[i], witness[j]), set()).update((i, j))
    keys = sorted(where)
    pts = tuple(frozenset(where[p]) for p in keys)
    on_line = []
    for ln in range(k):
        a, b, _ = witness[ln]
        mine = [p for p in range(len(keys)) if ln in pts[p]]
        mine.sort(key=lambda p: b * keys[p][0] - a * keys[p][1])
        if len(mine) > 1 and mine[0] > mine[-1]:
            mine.reverse()
        on_line.append(tuple(mine))
    return pts, tuple(on_line)


def _relabel_points(pts, on_line, target_pts):
    """Rename points of (pts, on_line) to the indices used by ``target_pts``."""
    idx = {ls: i for i, ls in enumerate(target_pts)}
    out = []
    for seq in on_line:
        s = tuple(idx[pts[p]] for p in seq)
        if len(s) > 1 and s[0] > s[-1]:
            s = s[::-1]
        out.append(s)
    return tuple(out)


def _witness_bank(k: int, pts, cls_of, samples: int, seed: int) -> dict[tuple, tuple]:
    rng = random.Random(seed)
    bank: dict[tuple, tuple] = {}
    target = set(pts)
    for t in range(samples):
        span = 2 + t % 6
        w = _realize(k, pts, cls_of, rng, span)
        if w is None:
            continue
        got = _type_of(k, w)
        if got is None or set(got[0]) != target:
            continue
        key = _relabel_points(got[0], got[1], pts)
        bank.setdefault(key, w)
    return bank


@dataclass
class EnumerationStats:
    candidates: int = 0
    classes: int = 0
    realized: int = 0
    unknown: int = 0
    notes: list[str] = field(default_factory=list)


def enumerate_arrangements(k: int, *, keep_unknown: bool = False, samples: int = 400, seed: int = 0,
                           stats: EnumerationStats | None = None, cap: int = MAX_LINES) -> Iterator[Arrangement]:
    """Every realizable arrangement of ``k`` lines once up to relabelling.

    Candidates are generated combinatorially and deduplicated by canonical
    key; each class is then tested by exact random realisation.  Classes
    with no witness are reported as ``unknown`` and skipped unless
    ``keep_unknown`` is set.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k > cap:
        raise ArrangementCapError(f"k={k} exceeds the practical cap {cap}")
    stats = stats if stats is not None else EnumerationStats()
    seen: dict[tuple, tuple] = {}
    banks: dict[tuple, dict] = {}
    for pts, on_line in candidates(k):
        stats.candidates += 1
        key = canonical_key(k, pts, on_line)
        if key not in seen:
            seen[key] = (pts, on_line)
    stats.classes = len(seen)
    for key in sorted(seen):
        pts, on_line = seen[key]
        cls_of = _parallel_classes(k, pts)
        skey = (pts, tuple(sorted(cls_of.items())))
        if skey not in banks:
            banks[skey] = _witness_bank(k, pts, cls_of, samples, seed)
        w = banks[skey].get(on_line)
        if w is not None:
            stats.realized += 1
            yield Arrangement(k, pts, on_line, w, "sat")
        else:
            stats.unknown += 1
            if keep_unknown:
                yield Arrangement(k, pts, on_line, (), "unknown")


def _parallel_classes(k: int, pts) -> dict[int, int]:
    meets = {frozenset(p) for ls in pts for p in itertools.combinations(sorted(ls), 2)}
    cls: dict[int, int] = {}
    for l in range(k):
        for m in range(l):
            if frozenset((l, m)) not in meets:
                cls[l] = cls[m]
                break
        else:
            cls[l] = l
    return cls


_CACHE: dict[int, tuple[Arrangement, ...]] = {}


def arrangements(k: int) -> tuple[Arrangement, ...]:
    """Memoised realised arrangements of ``k`` lines."""
    if k not in _CACHE:
        _CACHE[k] = tuple(enumerate_arrangements(k))
    return _CACHE[k]


# ---------------------------------------------------------------------------
# placements of G_{>2}
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Placement:
    at: Mapping[int, int]                         # vertex of g2 -> crossing
    edge_line: Mapping[tuple[int, int], int]      # edge of g2 -> supporting line
    occupied: frozenset[tuple[int, int]]          # (line, gap index) carrying an edge of g2
    covered_points: frozenset[int]                # crossings in the relative interior of an edge

    @property
    def used_points(self) -> frozenset[int]:
        return frozenset(self.at.values())


def _edge_span(arr: Arrangement, p: int, q: int):
    common = arr.points[p] & arr.points[q]
    if len(common) != 1:
        return None
    ln = next(iter(common))
    i, j = sorted((arr.position(ln, p), arr.position(ln, q)))
    gaps = frozenset((ln, x) for x in range(i + 1, j + 1))
    inner = frozenset(arr.on_line[ln][i + 1:j])
    return ln, gaps, inner


def place_high_degree(arr: Arrangement, g2: PlanarGraph) -> Iterator[Placement]:
    """Every injective vertex-to-crossing map giving a proper drawing of ``g2``."""
    n = g2.n
    if n > arr.n_crossings:
        return
    order = sorted(range(n), key=lambda v: -g2.degree(v))
    at: dict[int, int] = {}
    spans: dict[tuple[int, int], tuple] = {}

    def ok_edge(e, span) -> bool:
        ln, gaps, inner = span
        if inner & set(at.values()):
            return False
        for f, (ln2, gaps2, inner2) in spans.items():
            if gaps & gaps2:
                return False
            ends_f = {at[f[0]], at[f[1]]}
            ends_e = {at[e[0]], at[e[1]]}
            if inner & (inner2 | ends_f) or inner2 & ends_e:
                return False
        return True

    def rec(i: int):
        if i == n:
            occ = frozenset(g for s in spans.values() for g in s[1])
            cov = frozenset(p for s in spans.values() for p in s[2])
            yield Placement(dict(at), {e: s[0] for e, s in spans.items()}, occ, cov)
            return
        v = order[i]
        for p in range(arr.n_crossings):
            if p in at.values():
                continue
            # a new vertex may not sit inside an existing edge
            if any(p in s[2] for s in spans.values()):
                continue
            at[v] = p
            added = []
            good = True
            for w in g2.adj[v]:
                if w in at and w != v:
                    e = (min(v, w), max(v, w))
                    span = _edge_span(arr, at[e[0]], at[e[1]])
                    if span is None or not ok_edge(e, span):
                        good = False
                        break
                    spans[e] = span
                    added.append(e)
            if good:
                yield from rec(i + 1)
            for e in added:
                del spans[e]
            del at[v]

    yield from rec(0)


# ---------------------------------------------------------------------------
# routings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Supergap:
    line: int
    direction: int                   # +1 travels towards higher gap indices
    gaps: tuple[int, ...]            # gap indices in travel order
    start: int | None                # crossing where it starts (None: inside its first gap)
    end: int | None                  # crossing where it ends (None: inside its last gap)


@dataclass(frozen=True)
class Routing:
    supergaps: tuple[Supergap, ...]
    kind: str = "open"               # "open" | "closed"

    @property
    def h(self) -> int:
        return len(self.supergaps)

    @property
    def start(self) -> int | None:
        return self.supergaps[0].start

    @property
    def end(self) -> int | None:
        return self.supergaps[-1].end

    @property
    def floating(self) -> bool:
        """A single piece strictly inside one gap, touching no crossing."""
        return self.h == 1 and self.start is None and self.end is None and len(self.supergaps[0].gaps) == 1

    def floating_gap(self) -> tuple[int, int] | None:
        s = self.supergaps[0]
        return (s.line, s.gaps[0]) if self.floating else None

    def lines(self) -> tuple[int, ...]:
        return tuple(s.line for s in self.supergaps)

    def bends(self) -> tuple[int, ...]:
        return tuple(s.end for s in self.supergaps[:-1])

    def full_gaps(self) -> set[tuple[int, int]]:
        out = set()
        if self.floating:
            return out
        for s in self.supergaps:
            gs = list(s.gaps)
            if s.end is None:
                gs = gs[:-1]
            if s.start is None:
                gs = gs[1:]
            out.update((s.line, g) for g in gs)
        return out

    def partial_gaps(self) -> set[tuple[int, int, int]]:
        """(line, gap, side); side +1 when the piece touches the gap's upper crossing."""
        out = set()
        first, last = self.supergaps[0], self.supergaps[-1]
        if self.floating:
            return out
        if first.start is None:
            out.add((first.line, first.gaps[0], first.direction))
        if last.end is None:
            out.add((last.line, last.gaps[-1], -last.direction))
        return out

    def pass_points(self, arr: Arrangement) -> set[int]:
        """Crossings passed straight through inside a supergap."""
        out = set()
        for s in self.supergaps:
            for g1, g2 in zip(s.gaps, s.gaps[1:]):
                out.add(arr.on_line[s.line][max(g1, g2) - 1])
        return out

    def inner_points(self, arr: Arrangement) -> set[int]:
        """Crossings used by the routing other than its two ends."""
        out = self.pass_points(arr) | set(self.bends())
        if self.kind == "closed":
            out.add(self.start)
        return out


def enumerate_routings(arr: Arrangement, placement: Placement | None, start: int | None,
                       end: int | None, *, free_end: bool = False, closed: bool = False,
                       max_h: int | None = None) -> list[Routing]:
    """Simple supergap sequences between two ends.

    ``start`` is a crossing or None for a free start inside a gap; ``end`` is a
    crossing, or with ``free_end`` an inner point of any unused gap (half-lines
    included).  ``closed`` asks for a routing that leaves ``start`` and comes
    back to it along a different line.  Crossings are never revisited and
    bends happen only at crossings.
    """
    blocked: set[int] = set()
    occupied: set[tuple[int, int]] = set()
    if placement is not None:
        blocked = set(placement.used_points) | set(placement.covered_points)
        occupied = set(placement.occupied)
    if closed:
        end = start
    out: list[Routing] = []

    def emit(segs):
        if max_h is None or len(segs) <= max_h:
            out.append(Routing(tuple(segs), "closed" if closed else "open"))

    def walk(p, line, d, segs, gaps, seg_start, visited, used):
        g, q = arr.step(line, p, d)
        if (line, g) in occupied or (line, g) in used:
            return
        gaps = gaps + [g]
        if max_h is not None and len(segs) + 1 > max_h:
            return
        if free_end and not (start is None and not segs and len(gaps) == 1):
            emit(segs + [Supergap(line, d, tuple(gaps), seg_start, None)])
        if q is None:
            return
        used = used | {(line, g)}
        if q == end:
            if not closed or (segs and line != segs[0].line):
                emit(segs + [Supergap(line, d, tuple(gaps), seg_start, q)])
            return
        if q in blocked or q in visited:
            return
        visited = visited | {q}
        walk(q, line, d, segs, gaps, seg_start, visited, used)
        done = segs + [Supergap(line, d, tuple(gaps), seg_start, q)]
        for ln2 in sorted(arr.points[q] - {line}):
            for d2 in (1, -1):
                walk(q, ln2, d2, done, [], q, visited, used)

    if start is not None:
        for ln in sorted(arr.points[start]):
            for d in (1, -1):
                walk(start, ln, d, [], [], start, frozenset({start}), frozenset())
        return out
    for gap in arr.gaps():
        if (gap.line, gap.index) in occupied:
            continue
        if free_end and not closed:
            # a straight piece strictly inside one gap
            emit([Supergap(gap.line, 1, (gap.index,), None, None)])
        for d, q in ((1, gap.b), (-1, gap.a)):
            if q is None:
                continue
            first = Supergap(gap.line, d, (gap.index,), None, q)
            if q == end:
                emit([first])
                continue
            if q in blocked:
                continue
            used = frozenset({(gap.line, gap.index)})
            visited = frozenset({q})
            # keep going straight: re-enter walk with the first gap already taken
            walk(q, gap.line, d, [], [gap.index], None, visited, used)
            for ln2 in sorted(arr.points[q] - {gap.line}):
                for d2 in (1, -1):
                    walk(q, ln2, d2, [first], [], q, visited, used)
    return out


def feasible_collection(routings, placement: Placement | None, arr: Arrangement) -> bool:
    """Routings pairwise internally disjoint and disjoint from the drawing of G_{>2}.

    Two free ends may share one gap when they enter it from opposite sides.
    """
    occupied = set(placement.occupied) if placement is not None else set()
    blocked = set(placement.covered_points) | set(placement.used_points) if placement is not None else set()
    full: set = set()
    partial: set = set()
    points: set[int] = set()
    floating: set = set()
    for r in routings:
        fg = r.full_gaps()
        pg = r.partial_gaps()
        pg_plain = {(l, g) for l, g, _ in pg}
        if fg & occupied or pg_plain & occupied:
            return False
        if fg & full or fg & {(l, g) for l, g, _ in partial}:
            return False
        if any((l, g) in full or (l, g, s) in partial for l, g, s in pg):
            return False
        fl = r.floating_gap()
        if fl is not None and (fl in occupied or fl in full):
            return False
        floating.add(fl)
        if fg & floating:
            return False
        inner = r.inner_points(arr)
        if inner & blocked or inner & points:
            return False
        full |= fg
        partial |= pg
        points |= inner
    return True
