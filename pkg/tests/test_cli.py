import json
import subprocess
import sys

import pytest

from segnum.cli import load_instance, main
from segnum.graph import complete_graph
from segnum.io import dumps_instance


def run(capsys, *argv):
    rc = main(list(argv) + ["--no-timing"])
    out = capsys.readouterr()
    return rc, out.out.splitlines(), out.err


def report(lines, i=1):
    return json.loads(lines[i])


@pytest.mark.parametrize("name,n,m", [("triangle", 3, 3), ("k4", 4, 6), ("k2x3", 5, 6), ("c5", 5, 5),
                                      ("p4", 4, 3), ("star4", 5, 4), ("banana3", 5, 6)])
def test_builtin_names(name, n, m):
    g, inst = load_instance(name)
    assert (g.n, g.m) == (n, m) and inst is None


def test_oracle(capsys):
    rc, lines, _ = run(capsys, "oracle", "--grid", "5", "triangle")
    assert rc == 0 and lines[0] == "3"
    rep = report(lines)
    assert rep["verdict"] == 3 and "seconds" not in rep and "grid-restricted" in rep["flags"]


def test_banana_path_flags_printed_formula(capsys, tmp_path):
    out = tmp_path / "cert.svg"
    rc, lines, _ = run(capsys, "banana", "--path", "9", "--out", str(out))
    assert rc == 0 and lines[0].startswith("13")
    assert any("12" in f for f in report(lines)["flags"])
    assert out.read_text().startswith("<svg")


def test_seg_and_vc(capsys):
    rc, lines, _ = run(capsys, "seg", "--k", "2", "triangle")
    assert rc == 0 and report(lines)["verdict"] is False
    rc, lines, _ = run(capsys, "seg-vc", "--s", "2", "star4")
    assert rc == 0 and report(lines)["verdict"] is True


def test_list_cover(capsys):
    rc, lines, _ = run(capsys, "list-cover", "--k", "3", "--mode", "line", "triangle")
    assert rc == 0 and report(lines)["verdict"] is True


def test_arrangements(capsys):
    rc, lines, _ = run(capsys, "arrangements", "--k", "3")
    assert rc == 0 and lines[0] == "4"


def test_encode_and_decide(capsys, tmp_path):
    out = tmp_path / "f.smt2"
    rc, _, _ = run(capsys, "encode", "--k", "2", "triangle", "--out", str(out))
    assert rc == 0 and "(check-sat)" in out.read_text()
    rc, lines, _ = run(capsys, "decide", "--k", "3", "triangle")
    assert rc == 0 and lines[0] == "sat"


def test_render_from_file(capsys, tmp_path):
    from fractions import Fraction
    g = complete_graph(3)
    f = tmp_path / "t.json"
    f.write_text(dumps_instance(g, positions={0: (Fraction(0), Fraction(0)), 1: (Fraction(1), Fraction(0)),
                                              2: (Fraction(0), Fraction(1))}))
    rc, lines, _ = run(capsys, "render", str(f), "--out", str(tmp_path / "t.svg"))
    assert rc == 0 and lines[0] == "valid=True segments=3"


def test_several_graphs_in_workers(capsys):
    rc, lines, _ = run(capsys, "oracle", "p3", "c4", "--jobs", "2")
    assert rc == 0 and [lines[0], lines[2]] == ["1", "3"]


@pytest.mark.parametrize("argv", [
    ["oracle", "nosuchgraph"],
    ["oracle", "--grid", "40", "triangle"],
    ["seg", "--k", "9", "triangle"],
])
def test_errors_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and err.startswith("segnum ")


def test_bad_file_reports_location(capsys, tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"vertices": [0, 1], "edges": [[0, 3]]}')
    rc, _, err = run(capsys, "oracle", str(f))
    assert rc == 2 and "edges[0]" in err


def test_console_script_entry():
    r = subprocess.run([sys.executable, "-m", "segnum.cli", "oracle", "p2", "--no-timing"],
                       capture_output=True, text=True, timeout=120)
    assert r.returncode == 0 and r.stdout.splitlines()[0] == "1"
