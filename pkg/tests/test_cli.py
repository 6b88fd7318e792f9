import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from triphase import cli
from triphase.symmat import Q0, Q1, Q2, Q3, Q4


def run_cli(args, stdin=None):
    proc = subprocess.run([sys.executable, "-m", "triphase.cli", *args],
                          input=stdin, capture_output=True, text=True)
    return proc


def r2_document(sign=+1):
    psi = np.pi / 6
    E = -np.sin(psi) * Q0 + np.cos(psi) * Q4
    f = np.diag([3.0, 1.0, -1.0])
    g = 1.7 * (sign * E + Q1 + Q2 + Q3)    # arbitrary scale
    return {"f": f.tolist(), "g": g.tolist()}


def test_phase_worked_example(tmp_path):
    doc = tmp_path / "in.json"
    doc.write_text(json.dumps(r2_document()))
    proc = run_cli(["phase", "--input", str(doc), "--json", "--oracle"])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["classifier"]["region"] == "R2"
    assert out["classifier"]["phase"] == -1
    assert out["frame"]["psi"] == pytest.approx(np.pi / 6, abs=1e-9)
    assert (out["oracle"]["gamma1"], out["oracle"]["gamma2"],
            out["oracle"]["gamma3"]) == (-1, 1, -1)
    assert out["agreement"] is True
    for key in ("g1", "g2", "g3", "g4"):
        assert out["frame"][key] == pytest.approx(0.5, abs=1e-9)


def test_phase_reads_stdin():
    proc = run_cli(["phase", "--json"], stdin=json.dumps(r2_document(-1)))
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["classifier"]["phase"] == 1


def test_phase_degenerate_anchor_exit_2():
    doc = {"f": Q0.tolist(), "g": Q1.tolist()}
    proc = run_cli(["phase"], stdin=json.dumps(doc))
    assert proc.returncode == 2
    assert "DegenerateAnchor" in proc.stderr


def test_phase_asymmetric_input_exit_1():
    bad = r2_document()
    bad["g"][0][1] += 0.1
    proc = run_cli(["phase"], stdin=json.dumps(bad))
    assert proc.returncode == 1
    assert "not symmetric" in proc.stderr


def test_input_validation_messages():
    proc = run_cli(["phase"], stdin="{}")
    assert proc.returncode == 1 and "'f'" in proc.stderr
    proc = run_cli(["phase"], stdin='{"f": [[1]], "g": []}')
    assert proc.returncode == 1 and "3x3" in proc.stderr
    proc = run_cli(["phase"], stdin="not json")
    assert proc.returncode == 1
    proc = run_cli(["phase"],
                   stdin='{"f": [[1,0,"x"],[0,1,0],[0,0,1]], "g": [[1,0,0],[0,1,0],[0,0,1]]}')
    assert proc.returncode == 1 and "f[0][2]" in proc.stderr


def test_oracle_command():
    proc = run_cli(["oracle", "--json", "--steps", "1024"],
                   stdin=json.dumps(r2_document()))
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["oracle"]["reliable"] is True
    assert out["oracle"]["gamma2"] == 1
    assert out["oracle"]["minGap"] > 0.05


def test_oracle_degenerate_loop_exit_2():
    doc = {"f": np.diag([1.0, 0.0, -1.0]).tolist(), "g": Q1.tolist()}
    proc = run_cli(["oracle", "--json"], stdin=json.dumps(doc))
    assert proc.returncode == 2
    out = json.loads(proc.stdout)
    assert out["oracle"]["reliable"] is False
    assert out["oracle"]["minGap"] < 1e-4


def test_diagram_svg(tmp_path):
    out = tmp_path / "d.svg"
    doc = tmp_path / "in.json"
    doc.write_text(json.dumps(r2_document()))
    proc = run_cli(["diagram", "--input", str(doc), "--out", str(out)])
    assert proc.returncode == 0
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")
    body = out.read_text()
    assert "ellipse" in body
    for label in ("R1", "R2", "R3"):
        assert label in body


def test_nearest_command():
    proc = run_cli(["nearest", "--json"], stdin=json.dumps(r2_document()))
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    nd = out["nearest_degeneracy"]
    assert nd["branch"] in ("+", "-")
    assert nd["distance"] >= 0
    b = np.array([nd["b1"], nd["b2"], nd["b3"], nd["b4"]])
    assert np.linalg.norm(b) == pytest.approx(1, abs=1e-8)


def test_scan_empty():
    proc = run_cli(["scan", "--samples", "0", "--seed", "1", "--json"])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["agreements"] == 0 and out["disagreements"] == 0


def test_scan_deterministic_bytes():
    a = run_cli(["scan", "--samples", "120", "--seed", "9", "--json"])
    b = run_cli(["scan", "--samples", "120", "--seed", "9", "--json"])
    assert a.returncode == b.returncode == 0
    assert a.stdout == b.stdout
    assert json.loads(a.stdout)["disagreements"] == 0


def test_lauber_command():
    proc = run_cli(["lauber", "--json"])
    assert proc.returncode == 0
    out = json.loads(proc.stdout)
    assert out["frame"]["psi"] == pytest.approx(np.arccos(23 / 26), abs=1e-12)
    nd = out["nearest_degeneracy"]
    assert nd["b1"] == pytest.approx(0.997, abs=0.01)
    assert 0.03 <= nd["distance"] <= 0.09


def test_main_api_returns_exit_code():
    assert cli.main(["scan", "--samples", "0", "--seed", "1"]) == 0
