import json
import subprocess
import sys

import pytest

from artifact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_poly(capsys):
    code, out, _ = run(capsys, "poly", "--strands", "3", "--braid", "-1 2")
    assert code == 0 and out.strip() == "u^2 - (1 + t + t^-1)*u + 1"


def test_eval(capsys):
    code, out, _ = run(capsys, "eval", "--strands", "3", "--braid", "-1 2", "--class", "0,1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "X^2 - 3X + 1"
    assert lines[1].startswith("dominant root 2.618033988")


def test_automaton_dot(capsys, tmp_path):
    dot = tmp_path / "out.dot"
    code, out, _ = run(capsys, "automaton", "--strands", "3", "--dot", str(dot))
    assert code == 0 and "vertices 1" in out and "edges 2" in out
    assert dot.read_text().count("->") == 2


def test_exit_codes(capsys):
    assert run(capsys, "poly", "--strands", "3", "--braid", "x")[0] == 2
    assert run(capsys, "poly", "--strands", "3")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "eval", "--strands", "3", "--braid", "-1 2", "--class", "0,1,2")[0] == 2
    assert run(capsys, "poly", "--strands", "3", "--braid", "2 2")[0] == 3
    assert run(capsys, "certify", "--strands", "3", "--braid", "2 2")[0] == 3
    assert run(capsys, "eval", "--strands", "3", "--braid", "-1 2", "--class", "2,1")[0] == 4
    assert run(capsys, "fiber", "--strands", "3", "--braid", "-1 2", "--class", "2,1")[0] == 4
    assert run(capsys, "poly", "--strands", "3", "--braid", "2 2", "--override-certification")[0] == 0


def test_json_outputs(capsys):
    for cmd in ("poly", "certify", "alexander"):
        code, out, _ = run(capsys, cmd, "--strands", "3", "--braid", "-1 2", "--json")
        assert code == 0 and isinstance(json.loads(out), dict)
    code, out, _ = run(capsys, "fiber", "--strands", "3", "--braid", "-1 2", "--class", "1,2", "--json")
    d = json.loads(out)
    assert d["genus"] == 2 and d["total_boundary"] == 2


def test_norm_dilatation_fiber_text(capsys):
    _, out, _ = run(capsys, "norm", "--strands", "3", "--braid", "-1 2", "--class", "1,2")
    assert "teichmuller norm 4" in out and "in cone true" in out
    _, out, _ = run(capsys, "dilatation", "--strands", "3", "--braid", "-1 2", "--class", "1,2")
    assert "orientable" in out and "non_orientable" not in out
    _, out, _ = run(capsys, "fiber", "--strands", "4", "--braid", "-1 2 3", "--class", "0,1")
    assert "interior: 1 x 3-prong" in out


def test_path_file(capsys, tmp_path):
    p = tmp_path / "loop.json"
    p.write_text(json.dumps({"seed": "b4", "moves": ["p1:0>1", "g0.0:0>1", "p1:1>0"]}))
    code, out, _ = run(capsys, "poly", "--path-file", str(p))
    assert code == 0 and out.strip() == "u^4 - (1 + t^-1)*u^3 - (t^2 + t^3)*u + t^2"
    p.write_text(json.dumps({"seed": "b4", "moves": ["p1:0>1"]}))
    assert run(capsys, "poly", "--path-file", str(p))[0] == 2


def test_slope_override_parse(capsys):
    code, out, _ = run(capsys, "fiber", "--strands", "3", "--braid", "-1 2", "--class", "1,2",
                       "--slope-override", "axis=1/0")
    assert code == 0
    assert run(capsys, "fiber", "--strands", "3", "--braid", "-1 2", "--class", "1,2",
               "--slope-override", "axis")[0] == 2


def test_deterministic_console_script():
    cmd = [sys.executable, "-m", "artifact", "automaton", "--strands", "4"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and a.startswith("vertices 36")
