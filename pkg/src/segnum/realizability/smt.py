"""SMT-LIB 2 serialisation (QF_NRA).  Output is byte-stable for equal input."""

from __future__ import annotations

from .formula import Atom, Clause, Poly, RealFormula


def _num(c: int) -> str:
    return f"{c}.0" if c >= 0 else f"(- {-c}.0)"


def _var(i: int) -> str:
    return f"{'xy'[i % 2]}{i // 2}"


def poly_sexpr(p: Poly) -> str:
    terms = []
    for m, c in p.sorted_terms():
        factors = [_var(i) for i in m]
        if not factors:
            terms.append(_num(c))
        elif c == 1:
            terms.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
        else:
            terms.append(f"(* {_num(c)} {' '.join(factors)})")
    if not terms:
        return "0.0"
    return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def atom_sexpr(a: Atom) -> str:
    return f"({a.rel} {poly_sexpr(a.poly)} 0.0)"


def clause_sexpr(c: Clause) -> str:
    conj = []
    for d in c.disjuncts:
        parts = [atom_sexpr(a) for a in d]
        conj.append(parts[0] if len(parts) == 1 else f"(and {' '.join(parts)})")
    if not conj:
        return "false"
    return conj[0] if len(conj) == 1 else f"(or {' '.join(conj)})"


def emit_smt(f: RealFormula) -> str:
    out = ["(set-logic QF_NRA)", "(set-option :produce-models true)"]
    for p in range(f.n_points):
        name = f.point_names[p] if p < len(f.point_names) else f"p{p}"
        out.append(f"; point {p}: {name}")
        out.append(f"(declare-fun x{p} () Real)")
        out.append(f"(declare-fun y{p} () Real)")
    if f.immediate is not None:
        out.append(f"(assert {'true' if f.immediate else 'false'})")
    elif not f.clauses:
        out.append("(assert true)")
    for c in f.clauses:
        out.append(f"; {c.tag} {' '.join(map(str, c.meta))}".rstrip())
        out.append(f"(assert {clause_sexpr(c)})")
    out += ["(check-sat)", "(exit)"]
    return "\n".join(out) + "\n"
