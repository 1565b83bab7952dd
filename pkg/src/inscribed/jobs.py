"""Job-level request validation and dispatch shared by the CLI and API.

A JobRequest names exactly one curve source (preset, curve document, or
raw points) plus mode-specific parameters; run() routes it to the
solver or to the verification suite and returns a JobResult whose
solution records are produced by the shared wire serializer.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from . import solver, symplectic, wire
from .curves import Curve, fit_from_points, preset, preset_names, validate
from .errors import InscribedError, ValidationFailed
from .profiles import AspectProfile
from .system import residual_jacobian, verify_rectangle

MODES = ("solve", "sweep", "porism", "oracle", "verify")


@dataclass
class JobRequest:
    mode: str
    preset: str | None = None
    curve: dict | None = None
    points: list | None = None
    phi: float | None = None
    phi_lo: float | None = None
    phi_hi: float | None = None
    steps: int | None = None
    profile: dict | None = None
    grid: int | None = None
    slack: float | None = None
    config: dict = field(default_factory=dict)


@dataclass
class JobResult:
    mode: str
    curve: dict
    solutions: list | None = None
    sweep: dict | None = None
    report: dict | None = None
    hits: list | None = None
    warnings: list = field(default_factory=list)
    config: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        if self.mode == "verify":
            return bool(self.report and self.report.get("ok"))
        return True

    def to_payload(self) -> dict:
        """JSON-ready dict; field order fixed so dumps are deterministic."""
        out: dict[str, Any] = {"mode": self.mode, "curve": self.curve}
        if self.solutions is not None:
            out["solutions"] = self.solutions
        if self.sweep is not None:
            out["sweep"] = self.sweep
        if self.report is not None:
            out["report"] = self.report
        if self.hits is not None:
            out["hits"] = self.hits
        out["warnings"] = list(self.warnings)
        out["config"] = dict(self.config)
        out["timings"] = dict(self.timings)
        return out


_CONFIG_FIELDS = (
    "pair_grid",
    "bin_size",
    "angle_slack",
    "length_slack",
    "max_iter",
    "max_step",
    "accept_tol",
    "r_min",
    "snap_tol",
    "dedup_tol",
    "max_seeds",
)


def _build_config(overrides: dict) -> solver.SolverConfig:
    bad = sorted(set(overrides) - set(_CONFIG_FIELDS))
    if bad:
        raise ValueError(f"unknown config fields: {', '.join(bad)}")
    return solver.SolverConfig(**overrides)


def resolve_curve(req: JobRequest) -> tuple[Curve, dict]:
    """Materialize the request's curve and echo it as a document."""
    sources = [s for s in ("preset", "curve", "points") if getattr(req, s) is not None]
    if len(sources) != 1:
        raise ValueError(
            f"exactly one curve source required (preset, curve, or points); got {sources or 'none'}"
        )
    if req.preset is not None:
        curve = preset(req.preset)
    elif req.curve is not None:
        curve = wire.parse_curve_doc(req.curve)
    else:
        pts = np.asarray(req.points, dtype=float)
        curve = fit_from_points(pts)
    report = validate(curve)
    if not report.ok:
        raise ValidationFailed(
            "curve failed validation "
            f"(immersed={report.is_immersed}, simple={report.is_simple})",
            report=report,
        )
    return curve, wire.curve_to_doc(curve)


def run(req: JobRequest) -> JobResult:
    """Validate and execute one job; all modules funnel through here."""
    if req.mode not in MODES:
        raise ValueError(f"unknown mode {req.mode!r}; expected one of {MODES}")
    curve, doc = resolve_curve(req)
    cfg = _build_config(req.config)
    t0 = time.perf_counter()

    if req.mode == "solve":
        if req.phi is None:
            raise ValueError("solve requires phi")
        sols, warnings = solver.solve_all_retry(curve, float(req.phi), cfg)
        result = JobResult(
            mode="solve",
            curve=doc,
            solutions=[wire.solution_to_record(s) for s in sols],
            warnings=warnings,
        )
    elif req.mode == "porism":
        if req.profile is None:
            raise ValueError("porism requires a profile")
        prof = wire.parse_profile_doc(req.profile)
        sols, warnings = solver.solve_all_retry(curve, prof, cfg)
        result = JobResult(
            mode="porism",
            curve=doc,
            solutions=[wire.solution_to_record(s) for s in sols],
            warnings=warnings,
        )
    elif req.mode == "sweep":
        if req.phi_lo is None or req.phi_hi is None or req.steps is None:
            raise ValueError("sweep requires phi_lo, phi_hi, and steps")
        res = solver.sweep(curve, float(req.phi_lo), float(req.phi_hi), int(req.steps), cfg)
        result = JobResult(
            mode="sweep",
            curve=doc,
            sweep={
                "phis": [float(p) for p in res.phis],
                "entries": [
                    [wire.solution_to_record(s) for s in entry] for entry in res.entries
                ],
                "links": [[[int(i), int(j)] for i, j in step] for step in res.links],
            },
            warnings=list(res.warnings),
        )
    elif req.mode == "oracle":
        if req.phi is None:
            raise ValueError("oracle requires phi")
        grid = int(req.grid) if req.grid is not None else 256
        slack = float(req.slack) if req.slack is not None else 0.05
        hits = solver.oracle_solve(curve, float(req.phi), grid=grid, slack=slack)
        result = JobResult(
            mode="oracle",
            curve=doc,
            hits=[
                {
                    "params": [float(x) for x in h.params],
                    "vertices": [[v.real, v.imag] for v in h.vertices],
                }
                for h in hits
            ],
        )
    else:
        result = JobResult(mode="verify", curve=doc, report=identity_checks(curve))

    result.config = {k: req.config[k] for k in sorted(req.config)}
    result.timings = {"total_s": round(time.perf_counter() - t0, 6)}
    return result


# ---------------------------------------------------------------------------
# The verify mode: numerical identity checks for one curve


def _random_points(rng, count, lo=0.1, hi=10.0):
    z = rng.uniform(-2, 2, count) + 1j * rng.uniform(-2, 2, count)
    radius = rng.uniform(lo, hi, count)
    angle = rng.uniform(0, 2 * np.pi, count)
    w = radius * np.exp(1j * angle)
    return z, w


def identity_checks(curve: Curve, samples: int = 100) -> dict:
    """Pass/fail table for the geometric identities behind the search.

    Checks, at deterministic pseudo-random points: the pair-splitting
    map halves the symplectic form; rotating the second factor preserves
    it; the angle-doubling map preserves it away from the axis; the
    radius-dependent twist preserves it; the pair torus of the curve is
    Lagrangian; and the analytic system Jacobian matches finite
    differences.  Tolerances are fixed per check.
    """
    rng = np.random.default_rng(0)
    rows = []

    def add(name, value, tol):
        rows.append(
            {"check": name, "max_defect": float(value), "tol": tol, "pass": bool(value < tol)}
        )

    z, w = _random_points(rng, samples)
    worst = 0.0
    for zi, wi in zip(z, w):
        p = symplectic.SymplecticPoint(zi, wi)
        worst = max(
            worst,
            symplectic.pullback_defect(
                symplectic.split_pair, p, 0.5, jacobian=symplectic.SPLIT_JACOBIAN
            ),
        )
    add("pair_split_halves_form", worst, 1e-12)

    worst = 0.0
    for zi, wi in zip(z, w):
        p = symplectic.SymplecticPoint(zi, wi)
        phi = float(rng.uniform(0.1, np.pi - 0.1))
        worst = max(
            worst,
            symplectic.pullback_defect(
                lambda q, phi=phi: symplectic.rotate_second(q, phi),
                p,
                1.0,
                jacobian=symplectic.rotate_jacobian(phi),
            ),
        )
    add("rotation_preserves_form", worst, 1e-12)

    worst = 0.0
    for zi, wi in zip(z, w):
        p = symplectic.SymplecticPoint(zi, wi)
        worst = max(worst, symplectic.pullback_defect(symplectic.double_angle, p, 1.0))
    add("angle_doubling_preserves_form", worst, 1e-8)

    ramp = AspectProfile.polynomial([np.pi / 4, 1 / 64])
    worst = 0.0
    for zi, wi in zip(z, w):
        p = symplectic.SymplecticPoint(zi, wi)
        worst = max(
            worst,
            symplectic.pullback_defect(
                lambda q: symplectic.twist_second(q, ramp), p, 1.0
            ),
        )
    add("twist_preserves_form", worst, 1e-8)

    g = np.linspace(0, 2 * np.pi, 32, endpoint=False)
    ss, tt = np.meshgrid(g, g, indexing="ij")
    defect = symplectic.lagrangian_defect(curve, ss.ravel(), tt.ravel())
    add("pair_torus_lagrangian", float(np.max(defect)), 1e-9)

    prof = AspectProfile.polynomial([np.pi / 3, 1 / 32])
    worst = 0.0
    for _ in range(50):
        u = rng.uniform(0, 2 * np.pi, 4)
        jac = residual_jacobian(curve, u, prof)
        fd = _fd_jacobian(curve, u, prof)
        scale = max(1.0, float(np.abs(fd).max()))
        worst = max(worst, float(np.abs(jac - fd).max()) / scale)
    add("system_jacobian_matches_fd", worst, 1e-6)

    report = validate(curve)
    rows.append(
        {
            "check": "curve_is_valid_jordan",
            "max_defect": 0.0 if report.ok else 1.0,
            "tol": 1.0,
            "pass": bool(report.ok),
        }
    )

    return {"checks": rows, "ok": all(r["pass"] for r in rows)}


def _fd_jacobian(curve, u, profile, step=1e-6):
    from .system import residual

    out = np.empty((4, 4))
    for j in range(4):
        up = u.copy()
        um = u.copy()
        up[j] += step
        um[j] -= step
        out[:, j] = (residual(curve, up, profile) - residual(curve, um, profile)) / (2 * step)
    return out


def describe_presets() -> list[dict]:
    out = []
    for name in preset_names():
        c = preset(name)
        out.append(
            {"name": name, "curve": wire.curve_to_doc(c), "diameter": float(c.diameter)}
        )
    return out


def check_solutions(curve: Curve, records: list, tol: float = 1e-8) -> bool:
    """Re-verify serialized solution records geometrically."""
    return all(verify_rectangle(wire.record_to_solution(r), tol) for r in records)


def wrap_error(exc: Exception) -> dict:
    """Uniform {code, message, detail} error body for CLI and HTTP."""
    code = type(exc).__name__
    detail = None
    if isinstance(exc, ValidationFailed) and exc.report is not None:
        detail = wire.report_to_dict(exc.report)
    elif isinstance(exc, InscribedError) and exc.args[1:]:
        detail = exc.args[1]
    return {"code": code, "message": str(exc.args[0]) if exc.args else str(exc), "detail": detail}
