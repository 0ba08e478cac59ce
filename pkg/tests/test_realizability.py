import pytest

from segnum.drawing import segment_count, validate_drawing
from segnum.graph import PlanarGraph, banana_graph, complete_graph, cycle_graph, path_graph, star_graph
from segnum.realizability import (
    AlignmentInstance,
    EmitOnly,
    GridComplete,
    NumericSat,
    Poly,
    RejectedInstance,
    build_alignment_formula,
    build_segment_formula,
    chi_poly,
    decide,
    emit_smt,
    verify_witness,
)


def test_chi_poly_is_quadratic():
    p = chi_poly(0, 1, 2)
    assert p.degree == 2
    # points (0,0), (1,0), (0,1): counterclockwise
    assert p.evaluate([0, 0, 1, 0, 0, 1]) == 1


def test_poly_arithmetic():
    x, y = Poly.var(0), Poly.var(1)
    p = (x + y) * (x - y)
    assert p.evaluate([3, 2]) == 5
    assert p.degree == 2


@pytest.mark.parametrize("k,status", [(2, "unsat"), (3, "sat")])
def test_triangle_segment_formula(k, status):
    f = build_segment_formula(complete_graph(3), k)
    v = decide(f, GridComplete(5))
    assert v.status == status
    if v.sat:
        assert verify_witness(f, v.witness)
        d = v.drawing(f)
        assert validate_drawing(d, check_rotation=False)
        assert segment_count(d) <= k


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_threshold_short_circuits(n):
    g = path_graph(n)
    assert build_segment_formula(g, 3 * n - 6 + 1).immediate is True
    assert build_segment_formula(g, 0).immediate is False


def test_threshold_boundary_is_not_immediate():
    f = build_segment_formula(cycle_graph(4), 3 * 4 - 6)
    assert f.immediate is None
    assert decide(f).sat


def test_path_with_alignments_is_sat():
    g = path_graph(3)
    f = build_alignment_formula(AlignmentInstance(g, (((0, 1), (1, 2)),)))
    v = decide(f, GridComplete(4))
    assert v.sat and verify_witness(f, v.witness)
    assert segment_count(v.drawing(f)) == 1


def test_triangle_with_alignment_is_unsat():
    g = complete_graph(3)
    f = build_alignment_formula(AlignmentInstance(g, (((0, 1), (1, 2)),)))
    assert decide(f, GridComplete(5)).status == "unsat"


def test_numeric_strategy_finds_exact_witness():
    g = star_graph(4)
    inst = AlignmentInstance(g, (((0, 1), (0, 2)), ((0, 3), (0, 4))))
    f = build_alignment_formula(inst)
    v = decide(f, NumericSat(restarts=4))
    assert v.sat and verify_witness(f, v.witness)
    assert segment_count(v.drawing(f)) == 2


def test_banana_boomerang_instance():
    g = banana_graph(2)   # covering 0, 1; quad 0-2-1-3
    f = build_alignment_formula(AlignmentInstance(g, boomerangs=((0, 2, 1, 3),)))
    v = decide(f, GridComplete(4))
    assert v.sat and verify_witness(f, v.witness)


def test_malformed_instances_rejected():
    g = path_graph(4)
    with pytest.raises(RejectedInstance):
        build_alignment_formula(AlignmentInstance(g, (((0, 1), (2, 3)),)))
    with pytest.raises(RejectedInstance):
        build_alignment_formula(AlignmentInstance(g, (((0, 2), (1, 2)),)))


def test_forged_witness_rejected():
    f = build_segment_formula(complete_graph(3), 3)
    v = decide(f, GridComplete(5))
    bad = list(v.witness)
    bad[1] = bad[0]
    assert not verify_witness(f, bad)


def test_emit_only(tmp_path):
    f = build_segment_formula(complete_graph(3), 2)
    out = tmp_path / "f.smt2"
    v = decide(f, EmitOnly(str(out)))
    assert v.status == "unknown"
    text = out.read_text()
    assert text == emit_smt(f)
    assert "(check-sat)" in text and "QF_NRA" in text


@pytest.mark.parametrize("k,want", [(2, "unsat"), (3, "sat")])
def test_emitted_smt_agrees_with_z3(k, want):
    z3 = pytest.importorskip("z3")
    s = z3.Solver()
    s.set("timeout", 60_000)
    s.from_string(emit_smt(build_segment_formula(complete_graph(3), k)))
    got = str(s.check())
    if got == "unknown":
        pytest.skip("z3 gave up")
    assert got == want
