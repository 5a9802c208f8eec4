import json
import math

import numpy as np
import pytest

from specrange.cli import run


def run_cli(args):
    return run(list(args))


def read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    rows = [line.split(",") for line in lines[1:]]
    return header, rows


def test_boundary_csv_satisfies_constraint(tmp_path):
    out = tmp_path / "b.csv"
    assert run_cli(["boundary", "--j", "3/2", "--set", "jsq2d", "--phi-steps", "360", "--format", "csv", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["phi", "lambda_max", "multiplicity", "v1", "v2", "vertex_index"]
    assert len(rows) == 360
    for row in rows:
        v1, v2 = float(row[3]), float(row[4])
        residual = (v1 + v2 - 2.5) ** 2 + (v1 - v2) ** 2 / 3.0 - 1.0
        assert abs(residual) <= 1e-8


def test_boundary_csv_12_digits(tmp_path):
    out = tmp_path / "b.csv"
    run_cli(["boundary", "--j", "2", "--set", "ladder", "--gamma", "2", "--phi-steps", "16", "--out", str(out)])
    _, rows = read_csv(out)
    for row in rows:
        for field in row[:2] + row[3:5]:
            assert field == f"{float(field):.12g}"


def test_bounds_json_schema_and_value(tmp_path):
    out = tmp_path / "bounds.json"
    code = run_cli([
        "bounds", "--j", "5/2", "--set", "jsq2d",
        "--measures", "h,u0.5,u2,umax", "--phi-steps", "360", "--out", str(out),
    ])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["j_twice"] == 5
    assert doc["set"] == "jsq2d"
    assert set(doc["hyperrect"]) == {"lo", "hi"}
    assert doc["trivial"] is False
    kinds = [m["kind"] for m in doc["measures"]]
    assert kinds == ["h", "u", "u", "umax"]
    assert doc["measures"][1]["kappa"] == 0.5
    h_entry = doc["measures"][0]
    assert h_entry["sense"] == "min"
    assert h_entry["value"] == pytest.approx(0.419, abs=5e-3)
    assert all(set(a) == {"phi"} for a in h_entry["angles"])


def test_bounds_json_roundtrip_identical(tmp_path):
    out = tmp_path / "bounds.json"
    run_cli(["bounds", "--j", "2", "--set", "ladder", "--gamma", "2", "--phi-steps", "90", "--out", str(out)])
    raw = out.read_text()
    assert json.dumps(json.loads(raw), indent=2) + "\n" == raw


def test_boundary_json_roundtrip_identical(tmp_path):
    out = tmp_path / "b.json"
    run_cli(["boundary", "--j", "3/2", "--set", "jsq2d", "--phi-steps", "16", "--format", "json", "--out", str(out)])
    raw = out.read_text()
    assert json.dumps(json.loads(raw), indent=2) + "\n" == raw


def test_mesh_csv(tmp_path):
    out = tmp_path / "mesh.csv"
    assert run_cli(["mesh", "--j", "3/2", "--set", "anticomm", "--theta-steps", "8", "--phi-steps", "16", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["theta", "phi", "lambda_max", "multiplicity", "v1", "v2", "v3", "vertex_index"]
    for row in rows:
        v = np.array([float(row[4]), float(row[5]), float(row[6])])
        assert np.linalg.norm(v) == pytest.approx(math.sqrt(3), abs=1e-8)


def test_surface_csv_roman(tmp_path):
    out = tmp_path / "surf.csv"
    assert run_cli(["surface", "--family", "anticomm", "--gamma", "1", "--mu-steps", "45", "--nu-steps", "90", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["mu", "nu", "p1", "p2", "p3"]
    for row in rows:
        a1, a2, a3 = (float(x) for x in row[2:])
        lhs = (a1 * a2) ** 2 + (a2 * a3) ** 2 + (a3 * a1) ** 2
        assert abs(lhs - 2 * a1 * a2 * a3) <= 1e-10


def test_sweep_csv(tmp_path):
    out = tmp_path / "sweep.csv"
    assert run_cli(["sweep", "--family", "anticomm", "--gamma", "1", "--quantity", "am", "--j-list", "25,50", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["j_twice", "quantity", "value"]
    assert [r[0] for r in rows] == ["50", "100"]
    assert float(rows[1][2]) == pytest.approx(0.991733, abs=1e-5)


def test_gaps_csv(tmp_path):
    out = tmp_path / "gaps.csv"
    assert run_cli(["gaps", "--j", "5/2", "--set", "jpow", "--gamma", "3", "--theta-steps", "8", "--phi-steps", "16", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["theta", "phi", "lambda_max", "gap"]
    assert all(float(r[3]) >= 0 for r in rows)


def test_check_margin(tmp_path, capsys):
    assert run_cli(["check", "--j", "1", "--set", "j", "--point", "0,0,0", "--theta-steps", "12", "--phi-steps", "24"]) == 0
    captured = capsys.readouterr()
    assert float(captured.out.strip()) == pytest.approx(1.0, abs=1e-9)


def test_ops_json(tmp_path):
    out = tmp_path / "ops.json"
    assert run_cli(["ops", "--j", "1/2", "--set", "j", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["dim"] == 2
    assert [op["label"] for op in doc["operators"]] == ["Jx", "Jy", "Jz"]
    assert doc["operators"][2]["re"] == [[0.5, 0.0], [0.0, -0.5]]


def test_svg_output(tmp_path):
    out = tmp_path / "b.svg"
    assert run_cli(["boundary", "--j", "2", "--set", "jsq2d", "--phi-steps", "60", "--format", "svg", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("<svg")
    assert "polyline" in text


def test_usage_error_exit_code():
    assert run_cli(["boundary", "--set", "jsq2d"]) == 2  # missing --j
    assert run_cli(["boundary", "--j", "2", "--set", "nope"]) == 2
    assert run_cli(["boundary", "--j", "2", "--set", "jsq2d", "--phi-steps", "4"]) == 2


def test_numeric_failure_exit_code(tmp_path):
    out = tmp_path / "x.json"
    code = run_cli(["bounds", "--j", "1/2", "--set", "jsq2d", "--phi-steps", "16", "--out", str(out)])
    assert code == 1  # degenerate spectral interval
