from __future__ import annotations

import json
import subprocess
import sys

import pytest

from ptlattice.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_secular_symbolic(capsys):
    code, out, _ = call(capsys, "secular", "--J", "2", "--symbolic", "--format", "text")
    assert code == 0
    assert out.strip() == "t^2 - (1+u+2*v)*t + v^2"


def test_secular_numeric_document(capsys):
    code, out, _ = call(capsys, "secular", "--J", "3", "--values", "17,6,5")
    doc = json.loads(out)
    assert doc["text"] == "t^4 - 40*t^3 + 291*t^2 - 340*t + 25"
    assert doc["prefactor_power"] == 1


def test_sturmian_j3(capsys):
    code, out, _ = call(capsys, "sturmian", "--J", "3", "--symbolic")
    doc = json.loads(out)
    assert doc["A"] == ["v", "w"]
    assert doc["tilded"] == ["A1"]
    assert doc["complete"]


def test_sturmian_numeric_shape(capsys):
    code, out, _ = call(capsys, "sturmian", "--values", "17,6,5")
    doc = json.loads(out)
    assert doc["shape"]["j3_shape"] == "/+/"
    assert [i["branch"] for i in doc["shape"]["intervals"]] == ["full-range", "full-range"]


def test_spectrum_with_wavefunction(capsys):
    code, out, _ = call(capsys, "spectrum", "--values", "3", "--wavefunction")
    doc = json.loads(out)
    (s,) = doc["states"]
    assert float(s["t"]) == 4.0 and s["t_exact"] == "4"
    assert float(s["wavefunction"]["lambda"]) / float(s["wavefunction"]["rho"]) == pytest.approx(2.0)


def test_spectrum_raw_pairs(capsys):
    code, out, _ = call(capsys, "spectrum", "--pairs", "-3,0")
    assert code == 0 and float(json.loads(out)["states"][0]["t"]) == 4.0


def test_domain_csv_with_negative_range(capsys, tmp_path):
    bpath = tmp_path / "b.json"
    code, out, _ = call(
        capsys, "domain", "--J", "2", "--range", "-3:6,-3:3", "--step", "0.5", "--format", "csv",
        "--boundary-out", str(bpath),
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "param1,param2,count,complex_flag"
    assert len(lines) == 1 + 19 * 13
    doc = json.loads(bpath.read_text())
    assert doc["plane"] == ["u", "v"] and doc["boundaries"]["1"]


def test_verify_random_and_oracle(capsys):
    code, out, _ = call(capsys, "verify", "--J", "3", "--random", "3", "--seed", "1")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = call(capsys, "verify", "--values", "17,6,5", "--oracle-N", "100")
    assert code == 0


def test_verify_golden_reports_each_fixture(capsys):
    code, out, _ = call(capsys, "verify", "--golden")
    doc = json.loads(out)
    failed = [c["check"] for c in doc["checks"] if not c["ok"]]
    # the printed B2 carries the opposite overall sign; everything else matches
    assert failed == ["golden:B2"]
    assert code == 1


def test_errors_are_json(capsys):
    code, _, err = call(capsys, "spectrum", "--J", "2", "--values", "1")
    assert code == 2
    assert "error" in json.loads(err)
    code, _, err = call(capsys, "secular", "--J", "9", "--symbolic")
    assert code == 2


def test_out_file(capsys, tmp_path):
    target = tmp_path / "s.json"
    code, out, _ = call(capsys, "secular", "--J", "1", "--symbolic", "--out", str(target))
    assert out == "" and json.loads(target.read_text())["text"] == "t - (1+u)"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ptlattice", "secular", "--J", "2", "--values", "3,1", "--format", "text"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "t^2 - 6*t + 1"
