import dataclasses
import json
import subprocess
import sys

import pytest

from rostcenter import cli, golden
from rostcenter.root_system import build as real_build


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def run_json(capsys, *argv):
    code, out = run(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def test_info_text(capsys):
    code, out = run(capsys, "info", "E6")
    assert code == 0
    assert "delta_r: [2, 4]" in out
    assert "formula: h_1(z) h_3(z^2) h_5(z) h_6(z^2)" in out


def test_info_json(capsys):
    code, rep = run_json(capsys, "info", "E7")
    assert code == 0 and rep["status"] == "ok"
    assert set(rep) == {"command", "inputs", "payload", "status"}
    p = rep["payload"]
    assert p["root_count"] == 126
    assert p["fundamental_weights"][6] == ["1", "3/2", "2", "3", "5/2", "2", "3/2"]
    assert p["center"]["generators"][0]["formula"] == "h_2(-1) h_5(-1) h_7(-1)"


def test_zmap(capsys):
    code, rep = run_json(capsys, "zmap", "E6", "1")
    assert code == 0
    assert rep["payload"]["exponents"] == [1, 0, 2, 0, 1, 2]
    code, rep = run_json(capsys, "zmap", "E6", "7")
    assert code == 1 and "out of range" in rep["status"]["error"]


def test_gprime(capsys):
    code, rep = run_json(capsys, "gprime", "C5 inner circled=2,4")
    assert code == 0
    assert [c["multiplier"] for c in rep["payload"]["components"]] == [2, 2, 1]
    code, rep = run_json(capsys, "gprime", "B4 inner circled=4")
    assert code == 1 and rep["status"]["uncircled"] == [1, 2, 3]


@pytest.mark.parametrize("index, verdict, via", [
    ("E7 inner circled=1,3,4,6", "SameAsTitsClass", "reduction to G'"),
    ("C4 inner circled=2,4", "Zero", "reduction to G'"),
    ("B3 inner circled=1", "Zero", "vanish criterion"),
    ("G2 inner circled=", "Zero", "trivial center"),
    ("D5 inner circled=2", "SameAsTitsClass", "theorem table"),
    ("E6 outer2 circled=2,4", "SameAsTitsClass", "theorem table"),
])
def test_rost(capsys, index, verdict, via):
    code, rep = run_json(capsys, "rost", index)
    assert code == 0
    assert rep["payload"]["verdict"] == verdict
    assert rep["payload"]["via"].startswith(via)
    assert rep["payload"]["consistent_with_theorem"] is True


def test_rost_accepts_split_arguments(capsys):
    code, rep = run_json(capsys, "rost", "E7", "inner", "circled=1,3,4,6")
    assert code == 0 and rep["payload"]["rost_class"] == "[Q]"


def test_rost_condition_failure(capsys):
    code, rep = run_json(capsys, "rost", "E7 inner circled=1,3")
    assert code == 1
    assert rep["status"]["uncircled"] == [4, 6]


def test_classify_form(capsys):
    assert run_json(capsys, "classify-form", "0110")[1]["payload"]["class"] == "hyperbolic"
    assert run_json(capsys, "classify-form", "1001")[1]["payload"]["class"] == "metabolic-not-hyperbolic"
    code, rep = run_json(capsys, "classify-form", "0100")
    assert code == 1 and "symmetric" in rep["status"]["error"]
    assert run_json(capsys, "classify-form", "012")[0] == 1


@pytest.mark.parametrize("argv", [
    ["info", "E9"],
    ["info", "X3"],
    ["bogus"],
    [],
    ["rost", "E7 inner circled=9"],
    ["zmap", "A2", "one"],
    ["--format", "yaml", "info", "A2"],
])
def test_input_errors_exit_1(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert "status: error" in out


def test_json_errors_are_structured(capsys):
    code, rep = run_json(capsys, "info", "E9")
    assert code == 1 and "error" in rep["status"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "--format", "json", "rost", "D8 inner circled=2,4,6")
    second = run(capsys, "--format", "json", "rost", "D8 inner circled=2,4,6")
    assert first == second
    assert json.loads(first[1])["payload"]["expression"] == "a0⌣[Q_7] + a1⌣[Q_8]"


def test_verify_passes_and_is_stable(capsys):
    code1, out1 = run(capsys, "verify")
    code2, out2 = run(capsys, "verify")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "FAIL" not in out1
    assert out1.rstrip().endswith(f"passed {len(golden.checks())}, failed 0")


def test_verify_detects_corrupted_numbering(capsys, monkeypatch):
    def corrupted(name):
        rs = real_build(name)
        if str(rs.system_type) != "E7":
            return rs
        # reverse the vertex numbering of the weights only
        return dataclasses.replace(rs, fundamental_weights=tuple(reversed(rs.fundamental_weights)))

    monkeypatch.setattr(golden, "build", corrupted)
    code, out = run(capsys, "verify")
    assert code == 2
    assert "FAIL  E7 omega_7 coefficients" in out
    assert "status: error" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rostcenter", "classify-form", "0110"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "class: hyperbolic" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "rostcenter", "info", "Z1"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 1
