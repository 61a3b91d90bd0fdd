import json
import pathlib
import subprocess
import sys

import pytest

DATA = pathlib.Path(__file__).parent.parent / "demos" / "data"


def run_cli(*argv):
    proc = subprocess.run(
        [sys.executable, "-m", "courantcalc.cli", *argv],
        capture_output=True, text=True)
    return proc


def test_verify_algebroid_pass():
    proc = run_cli("verify-algebroid", str(DATA / "standard1.json"))
    assert proc.returncode == 0
    assert "all checks passed" in proc.stdout


def test_verify_algebroid_failure_exit_code():
    proc = run_cli("verify-algebroid", str(DATA / "su2_bad.json"))
    assert proc.returncode == 1
    assert "pairing-compatibility" in proc.stdout
    assert "residual: 1" in proc.stdout


def test_malformed_json_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    proc = run_cli("verify-algebroid", str(bad))
    assert proc.returncode == 2


def test_missing_file_exit_code():
    proc = run_cli("verify-algebroid", "no_such_file.json")
    assert proc.returncode == 2


def test_semantic_precondition_exit_code(tmp_path):
    doc = {"n": 1, "rank": 1, "pairing": [["x1"]], "anchor": [["0"]]}
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(doc))
    proc = run_cli("verify-algebroid", str(path))
    assert proc.returncode == 3
    assert "precondition" in proc.stderr


def test_cohomology_table():
    proc = run_cli("cohomology", str(DATA / "su2.json"), "--max-p", "3")
    assert proc.returncode == 0
    lines = [l.split() for l in proc.stdout.splitlines()
             if l[:1].isdigit()]
    assert [l[-1] for l in lines] == ["1", "0", "0", "1"]


def test_connection_build_and_verify(tmp_path):
    out = tmp_path / "conn.json"
    proc = run_cli("connection-build", str(DATA / "standard2.json"),
                   str(DATA / "predual_standard2.json"), "-o", str(out))
    assert proc.returncode == 0
    doc = json.loads(out.read_text())
    assert doc == {"gamma": {}}
    proc = run_cli("connection-verify", str(DATA / "standard2.json"),
                   str(DATA / "predual_standard2.json"), str(out))
    assert proc.returncode == 0


def test_curvature_and_bianchi(tmp_path):
    out = tmp_path / "conn.json"
    run_cli("connection-build", str(DATA / "standard2.json"),
            str(DATA / "predual_standard2.json"), "-o", str(out))
    proc = run_cli("curvature", str(DATA / "standard2.json"),
                   str(DATA / "predual_standard2.json"), str(out))
    assert proc.returncode == 0
    proc = run_cli("bianchi", str(DATA / "standard2.json"),
                   str(DATA / "predual_standard2.json"), str(out))
    assert proc.returncode == 0


def test_bott_rejects_bad_dirac_with_witness():
    proc = run_cli("bott", str(DATA / "standard2.json"),
                   str(DATA / "dirac_bad.json"))
    assert proc.returncode == 3
    assert "isotropic" in proc.stderr


def test_bott_accepts_tangent_distribution():
    proc = run_cli("bott", str(DATA / "standard2.json"),
                   str(DATA / "dirac_tangent.json"))
    assert proc.returncode == 0
    assert "curvature-vanishes" in proc.stdout


def test_predual_diagnose():
    proc = run_cli("predual-diagnose", str(DATA / "standard2.json"),
                   str(DATA / "predual_standard2.json"))
    assert proc.returncode == 0
    assert "case: isomorphic" in proc.stdout


def test_json_reports_are_byte_identical():
    args = ("verify-algebroid", str(DATA / "su2.json"),
            "--format", "json", "--seed", "3")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    doc = json.loads(first.stdout)
    assert doc["command"] == "verify-algebroid"
    assert all(c["status"] == "pass" for c in doc["checks"])


def test_cartan_command():
    proc = run_cli("cartan", str(DATA / "su2.json"))
    assert proc.returncode == 0
    assert "lie-section-lie-section" in proc.stdout
