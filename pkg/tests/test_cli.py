"""Command-line driver: verbs, exit codes, JSONL output, error bodies."""

import json

import numpy as np
import pytest

from inscribed import cli, wire
from inscribed.curves import preset


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_writes_jsonl(tmp_path, capsys):
    out = tmp_path / "sols.jsonl"
    code, stdout, stderr = run_cli(
        ["solve", "--curve", "circle", "--phi", str(np.pi / 2), "--out", str(out)],
        capsys,
    )
    assert code == 0
    assert stderr == ""
    assert "1 solution(s)" in stdout
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    sol = wire.record_to_solution(rec)
    assert abs(sol.center) < 1e-8
    assert sol.half_diag == pytest.approx(1.0, abs=1e-8)


def test_solve_without_out_still_summarizes(capsys):
    code, stdout, _ = run_cli(
        ["solve", "--curve", "ellipse(2,1)", "--phi", str(np.pi / 3)], capsys
    )
    assert code == 0
    assert "2 solution(s)" in stdout


def test_solve_accepts_curve_file(tmp_path, capsys):
    path = tmp_path / "curve.json"
    path.write_text(wire.canonical_dumps(wire.curve_to_doc(preset("ellipse(2,1)"))))
    code, stdout, _ = run_cli(
        ["solve", "--curve", str(path), "--phi", str(np.pi / 3)], capsys
    )
    assert code == 0
    assert "2 solution(s)" in stdout


def test_unknown_preset_error_body(capsys):
    code, stdout, stderr = run_cli(
        ["solve", "--curve", "heptagon", "--phi", "1.0"], capsys
    )
    assert code == 1
    assert stdout == ""
    body = json.loads(stderr)
    assert body["code"] == "UnknownPreset"
    assert "heptagon" in body["message"]


def test_self_crossing_curve_file_rejected(tmp_path, capsys):
    doc = {
        "type": "fourier",
        "n": 2,
        "coeffs": [[1, 0.0, -0.5], [-1, 0.0, 0.5], [2, -0.5, 0.0], [-2, 0.5, 0.0]],
    }
    path = tmp_path / "eight.json"
    path.write_text(json.dumps(doc))
    code, stdout, stderr = run_cli(
        ["solve", "--curve", str(path), "--phi", "1.0"], capsys
    )
    assert code == 1
    body = json.loads(stderr)
    assert body["code"] == "ValidationFailed"
    assert body["detail"]["is_simple"] is False


def test_malformed_curve_file(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    code, _, stderr = run_cli(["solve", "--curve", str(path), "--phi", "1.0"], capsys)
    assert code == 1
    assert json.loads(stderr)["code"] == "ParseError"


def test_missing_required_arg_exits_two(capsys):
    with pytest.raises(SystemExit) as err:
        cli.main(["solve", "--curve", "circle"])
    assert err.value.code == 2
    capsys.readouterr()


def test_sweep_jsonl_carries_phi_step(tmp_path, capsys):
    out = tmp_path / "sweep.jsonl"
    code, stdout, _ = run_cli(
        [
            "sweep",
            "--curve",
            "circle",
            "--phi-lo",
            "1.0",
            "--phi-hi",
            "1.5",
            "--steps",
            "3",
            "--out",
            str(out),
        ],
        capsys,
    )
    assert code == 0
    assert "3 steps" in stdout
    recs = [json.loads(line) for line in out.read_text().strip().splitlines()]
    assert {r["phi_step"] for r in recs} == {1.0, 1.25, 1.5}
    for r in recs:
        assert "params" in r and "vertices" in r


def test_porism_verb(tmp_path, capsys):
    prof = tmp_path / "ramp.json"
    prof.write_text(json.dumps({"kind": "polynomial", "coeffs": [np.pi / 4, 1 / 8]}))
    out = tmp_path / "porism.jsonl"
    code, stdout, _ = run_cli(
        ["porism", "--curve", "circle", "--profile", str(prof), "--out", str(out)],
        capsys,
    )
    assert code == 0
    recs = [json.loads(line) for line in out.read_text().strip().splitlines()]
    assert recs
    for r in recs:
        assert r["phi"] == pytest.approx(np.pi / 4 + 0.25, abs=1e-8)


def test_oracle_verb(tmp_path, capsys):
    out = tmp_path / "hits.jsonl"
    code, stdout, _ = run_cli(
        [
            "oracle",
            "--curve",
            "circle",
            "--phi",
            str(np.pi / 2),
            "--grid",
            "64",
            "--out",
            str(out),
        ],
        capsys,
    )
    assert code == 0
    assert "grid hits" in stdout
    recs = [json.loads(line) for line in out.read_text().strip().splitlines()]
    assert recs
    assert set(recs[0]) == {"params", "vertices"}


def test_verify_verb(tmp_path, capsys):
    out = tmp_path / "checks.jsonl"
    code, stdout, _ = run_cli(
        ["verify", "--curve", "ellipse(2,1)", "--out", str(out)], capsys
    )
    assert code == 0
    assert "overall: PASS" in stdout
    assert stdout.count("PASS") == 8  # 7 checks plus the overall line
    recs = [json.loads(line) for line in out.read_text().strip().splitlines()]
    assert len(recs) == 7
    assert all(r["pass"] for r in recs)


def test_grid_flag_feeds_config(capsys):
    code, stdout, _ = run_cli(
        ["solve", "--curve", "circle", "--phi", str(np.pi / 2), "--grid", "128"],
        capsys,
    )
    assert code == 0
    assert "1 solution(s)" in stdout


def test_bad_phi_is_an_error_body(capsys):
    code, _, stderr = run_cli(["solve", "--curve", "circle", "--phi", "3.0"], capsys)
    assert code == 1
    assert json.loads(stderr)["code"] == "ValueError"
