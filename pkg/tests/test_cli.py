import json
import subprocess
import sys

import pytest

from cfa.cli import main
from cfa.dsl import emit_cocycle
from cfa.cohomology import TwoCocycle
from cfa import make_virasoro



def run(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("args,code", [
    (["check", "-a", "vir"], 0),
    (["check", "-a", "current:sl2"], 0),
    (["solvable", "-a", "current:borel"], 0),
    (["solvable", "-a", "vir"], 1),
    (["nilpotent", "-a", "current:h3"], 0),
    (["nilpotent", "-a", "current:borel"], 1),
    (["simple", "-a", "vir"], 0),
    (["simple", "-a", "S:1"], 1),
    (["center", "-a", "vir"], 0),
    (["derived", "-a", "current:borel"], 0),
    (["lcs", "-a", "current:h3"], 0),
    (["h2", "-a", "vir"], 0),
    (["modes", "-a", "vir", "--window=-4..4", "--check-jacobi"], 0),
    (["module", "check", "-m", "ext44b:0:2"], 0),
    (["module", "split", "-m", "ext44b:0:1"], 1),
    (["module", "irreducible", "-m", "M:1/2:2"], 0),
    (["module", "irreducible", "-m", "M:1/2:0"], 1),
    (["module", "invariants", "-m", "ext44b:0:1"], 0),
    (["module", "to-gc", "-m", "M:1/2:2"], 0),
    (["check", "-a", "nosuch"], 2),
    (["check"], 2),
    (["check", "-a", "W:9"], 2),
])
def test_exit_codes(args, code, capsys):
    got, _, err = run(args, capsys)
    assert got == code
    if code == 2:
        assert err.startswith("cfa: error:")


def test_usage_error_exit_2(capsys):
    code, _, err = run(["bogus"], capsys)
    assert code == 2 and "invalid choice" in err


def test_corrupted_file_fails_check(tmp_path, capsys):
    f = tmp_path / "bad.cfa"
    f.write_text("algebra bad { even L; [L 0 L] = d^1 L; [L 1 L] = 3 L; }")
    code, _, err = run(["check", "-a", str(f)], capsys)
    assert code == 2 and "skew-symmetry" in err
    f.write_text("algebra bad raw { even L; [L 0 L] = d^1 L; [L 1 L] = 3 L; }")
    code, out, _ = run(["check", "-a", str(f), "--json", "-"], capsys)
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "fail"
    assert any(v["axiom"] == "C3" and v["m"] == 1 and v["n"] == 1 and v["lhs"] == "9 L"
               and v["rhs"] == "12 L" for v in doc["violations"])


def test_parse_error_has_position(tmp_path, capsys):
    f = tmp_path / "bad.cfa"
    f.write_text("algebra v {\n  even L;\n  [L 0 M] = d^1 M;\n}")
    code, _, err = run(["check", "-a", str(f)], capsys)
    assert code == 2 and "line 3" in err and "'M'" in err


def test_h2_json(capsys):
    code, out, _ = run(["h2", "-a", "vir", "--json", "-", "-q"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["dim"] == 1 and doc["n_bound"] == 6 and doc["f_degree_bound"] == 8


def test_table_dsl_round_trip(tmp_path, capsys):
    code, out, _ = run(["table", "-a", "K:2", "--format", "dsl"], capsys)
    f = tmp_path / "k2.cfa"
    f.write_text(out)
    code2, out2, _ = run(["table", "-a", str(f), "--json", "-", "-q"], capsys)
    code3, out3, _ = run(["table", "-a", "K:2", "--json", "-", "-q"], capsys)
    assert code == code2 == 0
    a, b = json.loads(out2), json.loads(out3)
    assert a["products"] == b["products"]


def test_extend(tmp_path, capsys):
    f = tmp_path / "c.cfa"
    f.write_text(emit_cocycle(TwoCocycle(make_virasoro(), {("L", "L", 3): 1})))
    code, _, _ = run(["extend", "-a", "vir", "--cocycle", str(f)], capsys)
    assert code == 0
    f.write_text("cocycle over vir { [L 2 L] = 1; }")
    code, _, _ = run(["extend", "-a", "vir", "--cocycle", str(f)], capsys)
    assert code == 1


def test_json_to_file(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(["check", "-a", "vir", "--json", str(out), "-q"], capsys)
    assert code == 0 and json.loads(out.read_text())["status"] == "pass"


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cfa.cli", "check", "-a", "vir"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
