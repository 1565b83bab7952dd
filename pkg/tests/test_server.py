"""HTTP API: endpoints, status codes, error bodies, CLI/API byte identity."""

import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from inscribed import jobs, wire
from inscribed.server import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _circle_points(m=64):
    s = np.linspace(0, 2 * np.pi, m, endpoint=False)
    return np.column_stack([np.cos(s), np.sin(s)]).tolist()


def test_solve_endpoint(client):
    r = client.post("/api/solve", json={"preset": "circle", "phi": np.pi / 2})
    assert r.status_code == 200
    body = r.json()
    assert body["mode"] == "solve"
    assert len(body["solutions"]) == 1
    cx, cy = body["solutions"][0]["center"]
    assert abs(complex(cx, cy)) < 1e-8


def test_solve_accepts_preset_name_in_curve_field(client):
    r = client.post("/api/solve", json={"curve": "ellipse(2,1)", "phi": np.pi / 3})
    assert r.status_code == 200
    assert len(r.json()["solutions"]) == 2


def test_solve_accepts_point_list_in_curve_field(client):
    r = client.post("/api/solve", json={"curve": _circle_points(), "phi": np.pi / 2})
    assert r.status_code == 200
    sols = r.json()["solutions"]
    assert len(sols) == 1
    assert sols[0]["half_diag"] == pytest.approx(1.0, abs=1e-3)


def test_solve_matches_cli_byte_for_byte(client):
    r = client.post("/api/solve", json={"preset": "ellipse(2,1)", "phi": np.pi / 3})
    api_records = r.json()["solutions"]
    res = jobs.run(jobs.JobRequest(mode="solve", preset="ellipse(2,1)", phi=np.pi / 3))
    assert wire.canonical_dumps(api_records) == wire.canonical_dumps(res.solutions)


def test_unknown_preset_is_404(client):
    r = client.post("/api/solve", json={"preset": "nonagon", "phi": 1.0})
    assert r.status_code == 404
    body = r.json()
    assert body["code"] == "UnknownPreset"
    assert set(body) == {"code", "message", "detail"}


def test_no_solution_is_422(client):
    r = client.post(
        "/api/solve",
        json={"preset": "circle", "phi": np.pi / 2, "config": {"r_min": 100.0}},
    )
    assert r.status_code == 422
    assert r.json()["code"] == "NoSolutionFound"


def test_validation_failure_is_400_with_report(client):
    doc = {
        "type": "fourier",
        "n": 2,
        "coeffs": [[1, 0.0, -0.5], [-1, 0.0, 0.5], [2, -0.5, 0.0], [-2, 0.5, 0.0]],
    }
    r = client.post("/api/solve", json={"curve": doc, "phi": 1.0})
    assert r.status_code == 400
    body = r.json()
    assert body["code"] == "ValidationFailed"
    assert body["detail"]["is_simple"] is False


def test_unknown_field_is_400(client):
    r = client.post("/api/solve", json={"preset": "circle", "phi": 1.0, "zoom": 3})
    assert r.status_code == 400
    assert "zoom" in r.json()["message"]


def test_missing_phi_is_400(client):
    r = client.post("/api/solve", json={"preset": "circle"})
    assert r.status_code == 400
    assert "phi" in r.json()["message"]


def test_sweep_endpoint(client):
    r = client.post(
        "/api/sweep",
        json={"preset": "circle", "phi_lo": 1.0, "phi_hi": 1.5, "steps": 3},
    )
    assert r.status_code == 200
    sweep = r.json()["sweep"]
    assert sweep["phis"] == [1.0, 1.25, 1.5]
    assert len(sweep["entries"]) == 3
    assert len(sweep["links"]) == 2


def test_porism_endpoint(client):
    r = client.post(
        "/api/porism",
        json={
            "preset": "circle",
            "profile": {"kind": "polynomial", "coeffs": [np.pi / 4, 1 / 8]},
        },
    )
    assert r.status_code == 200
    for rec in r.json()["solutions"]:
        assert rec["phi"] == pytest.approx(np.pi / 4 + 0.25, abs=1e-8)


def test_porism_bad_profile_is_400(client):
    r = client.post(
        "/api/porism",
        json={"preset": "circle", "profile": {"type": "poly", "coeffs": [1.0]}},
    )
    assert r.status_code == 400
    assert r.json()["code"] == "ParseError"


def test_verify_endpoint(client):
    r = client.post("/api/verify", json={"preset": "ellipse(2,1)"})
    assert r.status_code == 200
    report = r.json()["report"]
    assert report["ok"] is True
    assert len(report["checks"]) == 7
    for row in report["checks"]:
        assert set(row) == {"check", "max_defect", "tol", "pass"}


def test_fit_endpoint_round_trip(client):
    r = client.post("/api/fit", json={"points": _circle_points(), "cutoff": 8})
    assert r.status_code == 200
    body = r.json()
    assert set(body) == {"curve", "report", "deviation"}
    assert body["report"]["is_simple"] is True
    assert body["deviation"] < 1e-2
    curve = wire.parse_curve_doc(body["curve"])
    assert curve.n <= 8


def test_fit_too_few_points_is_400(client):
    r = client.post("/api/fit", json={"points": [[0, 0], [1, 0], [0, 1]]})
    assert r.status_code == 400
    assert r.json()["code"] == "TooFewPoints"


def test_fit_rejects_bad_cutoff(client):
    r = client.post("/api/fit", json={"points": _circle_points(), "cutoff": 0})
    assert r.status_code == 400
    r = client.post("/api/fit", json={"points": _circle_points(), "cutoff": True})
    assert r.status_code == 400


def test_presets_endpoint(client):
    r = client.get("/api/presets")
    assert r.status_code == 200
    rows = r.json()["presets"]
    names = [row["name"] for row in rows]
    assert "circle" in names and "bean" in names
    for row in rows:
        assert set(row) == {"name", "curve", "diameter"}


def test_responses_are_canonical_json(client):
    r = client.post("/api/solve", json={"preset": "circle", "phi": np.pi / 2})
    # canonical encoding: compact separators, no trailing whitespace
    text = r.text
    assert ": " not in text and ", " not in text
    assert json.loads(text)  # still valid JSON


def test_static_dir_mount(tmp_path):
    (tmp_path / "index.html").write_text("<!doctype html><title>ui</title>")
    app = create_app(static_dir=str(tmp_path))
    c = TestClient(app)
    r = c.get("/")
    assert r.status_code == 200
    assert "ui" in r.text
    # API still reachable alongside the static mount
    assert c.get("/api/presets").status_code == 200


def test_oracle_requires_curve_source(client):
    r = client.post("/api/solve", json={"phi": 1.0})
    assert r.status_code == 400
    assert "exactly one" in r.json()["message"]
