"""Small exact integer programs: maximise c.x subject to A x <= b, 0 <= x <= u, x integer.

Solved by branch-and-bound over an exact rational two-phase simplex.
``solve_exhaustive`` enumerates the bounded box and serves as the
reference on tiny models.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction


class IlpError(RuntimeError):
    pass


class Infeasible(IlpError):
    pass


@dataclass
class IlpModel:
    names: list[str] = field(default_factory=list)
    upper: list[int] = field(default_factory=list)
    objective: dict[int, int] = field(default_factory=dict)
    rows: list[tuple[dict[int, int], int]] = field(default_factory=list)   # sum coef*x <= rhs
    constants: dict[str, int] = field(default_factory=dict)

    def var(self, name: str, upper: int, obj: int = 0) -> int:
        if upper < 0:
            raise IlpError(f"negative bound for {name}")
        self.names.append(name)
        self.upper.append(int(upper))
        if obj:
            self.objective[len(self.names) - 1] = obj
        return len(self.names) - 1

    def le(self, coefs: dict[int, int], rhs: int) -> None:
        coefs = {i: c for i, c in coefs.items() if c}
        self.rows.append((coefs, int(rhs)))

    @property
    def n(self) -> int:
        return len(self.names)

    def feasible(self, x) -> bool:
        if any(not 0 <= xi <= ui for xi, ui in zip(x, self.upper)):
            return False
        return all(sum(c * x[i] for i, c in row.items()) <= rhs for row, rhs in self.rows)

    def value(self, x) -> int:
        return sum(c * x[i] for i, c in self.objective.items())

    def dump(self) -> str:
        def lin(row):
            return " + ".join(f"{c}*{self.names[i]}" if c != 1 else self.names[i] for i, c in sorted(row.items())) or "0"
        out = ["maximize " + lin(self.objective)]
        out += [f"  {lin(row)} <= {rhs}" for row, rhs in self.rows]
        out += [f"  0 <= {nm} <= {u}" for nm, u in zip(self.names, self.upper)]
        return "\n".join(out) + "\n"


@dataclass(frozen=True)
class IlpSolution:
    value: int
    x: tuple[int, ...]
    nodes: int = 0


# ---------------------------------------------------------------------------
# exact simplex
# ---------------------------------------------------------------------------


def _simplex_max(c: list[Fraction], A: list[list[Fraction]], b: list[Fraction]):
    """max c.x s.t. A x <= b, x >= 0.  Returns (value, x) or None when infeasible."""
    m, n = len(A), len(c)
    # standard form with slacks; rows with negative rhs get flipped and an artificial
    T: list[list[Fraction]] = []
    basis: list[int] = []
    n_art = sum(1 for bi in b if bi < 0)
    width = n + m + n_art + 1
    art = n + m
    for i in range(m):
        row = [Fraction(0)] * width
        sign = -1 if b[i] < 0 else 1
        for j in range(n):
            row[j] = A[i][j] * sign
        row[n + i] = Fraction(sign)
        row[-1] = b[i] * sign
        if sign < 0:
            row[art] = Fraction(1)
            basis.append(art)
            art += 1
        else:
            basis.append(n + i)
        T.append(row)

    def pivot(r: int, s: int):
        pv = T[r][s]
        T[r] = [v / pv for v in T[r]]
        for i in range(len(T)):
            if i != r and T[i][s] != 0:
                f = T[i][s]
                T[i] = [a - f * bb for a, bb in zip(T[i], T[r])]
        basis[r] = s

    def run(obj: list[Fraction], allowed: int) -> Fraction:
        while True:
            # reduced costs for maximisation
            z = [sum(obj[basis[i]] * T[i][j] for i in range(m)) - obj[j] for j in range(allowed)]
            s = next((j for j in range(allowed) if z[j] < 0), None)
            if s is None:
                return sum(obj[basis[i]] * T[i][-1] for i in range(m))
            ratios = [(T[i][-1] / T[i][s], basis[i], i) for i in range(m) if T[i][s] > 0]
            if not ratios:
                raise IlpError("unbounded relaxation")
            _, _, r = min(ratios)
            pivot(r, s)

    if n_art:
        obj1 = [Fraction(0)] * (width - 1)
        for j in range(n + m, n + m + n_art):
            obj1[j] = Fraction(-1)
        if run(obj1, width - 1) < 0:
            return None
        # drive artificials out of the basis
        for i in range(m):
            if basis[i] >= n + m:
                s = next((j for j in range(n + m) if T[i][j] != 0), None)
                if s is not None:
                    pivot(i, s)
    obj2 = list(c) + [Fraction(0)] * (width - 1 - n)
    val = run(obj2, n + m)
    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = T[i][-1]
    return val, x


def _relaxation(model: IlpModel, extra: list[tuple[dict[int, int], int]]):
    n = model.n
    rows = list(model.rows) + [({i: 1}, u) for i, u in enumerate(model.upper)] + extra
    A = [[Fraction(row.get(j, 0)) for j in range(n)] for row, _ in rows]
    b = [Fraction(rhs) for _, rhs in rows]
    c = [Fraction(model.objective.get(j, 0)) for j in range(n)]
    return _simplex_max(c, A, b)


def solve_ilp(model: IlpModel) -> IlpSolution:
    """Exact optimum by depth-first branch-and-bound on the LP relaxation."""
    if model.n == 0:
        if any(rhs < 0 for _, rhs in model.rows):
            raise Infeasible("empty model with a violated row")
        return IlpSolution(0, ())
    best: list = [None, None]
    nodes = 0
    stack: list[list[tuple[dict[int, int], int]]] = [[]]
    while stack:
        extra = stack.pop()
        nodes += 1
        rel = _relaxation(model, extra)
        if rel is None:
            continue
        val, x = rel
        if best[0] is not None and math.floor(val) <= best[0]:
            continue
        frac = next((j for j in range(model.n) if x[j].denominator != 1), None)
        if frac is None:
            xi = tuple(int(v) for v in x)
            v = model.value(xi)
            if best[0] is None or v > best[0]:
                best = [v, xi]
            continue
        f = math.floor(x[frac])
        stack.append(extra + [({frac: -1}, -(f + 1))])
        stack.append(extra + [({frac: 1}, f)])
    if best[0] is None:
        raise Infeasible("no integer point")
    return IlpSolution(best[0], best[1], nodes)


def solve_exhaustive(model: IlpModel) -> IlpSolution:
    best = None
    for x in itertools.product(*(range(u + 1) for u in model.upper)):
        if model.feasible(x):
            v = model.value(x)
            if best is None or v > best.value:
                best = IlpSolution(v, tuple(x))
    if best is None:
        raise Infeasible("no integer point")
    return best


__all__ = ["IlpModel", "IlpSolution", "IlpError", "Infeasible", "solve_ilp", "solve_exhaustive"]
