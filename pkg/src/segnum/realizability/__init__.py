"""Existential real-arithmetic encodings and bounded decision strategies."""

from .decide import EmitOnly, GridComplete, NumericSat, Verdict, decide, verify_witness
from .formula import (
    AlignmentInstance,
    Atom,
    Clause,
    Poly,
    RealFormula,
    RejectedInstance,
    build_alignment_formula,
    build_segment_formula,
    chi_poly,
)
from .smt import emit_smt

__all__ = [
    "AlignmentInstance", "Atom", "Clause", "EmitOnly", "GridComplete", "NumericSat", "Poly",
    "RealFormula", "RejectedInstance", "Verdict", "build_alignment_formula", "build_segment_formula",
    "chi_poly", "decide", "emit_smt", "verify_witness",
]
