"""Wire formats: curve documents, profile documents, solution records.

One serializer feeds both the CLI and the HTTP API so the two can never
drift; canonical_dumps pins separators and float formatting, making
equal payloads byte-identical.
"""

from __future__ import annotations

import json

import numpy as np

from .curves import Curve, CurveValidityReport
from .errors import ParseError
from .profiles import AspectProfile
from .system import RectangleSolution


def _plain(obj):
    """Recursively convert numpy scalars/arrays so json can emit them."""
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_plain(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(x) for x in obj]
    return obj


def canonical_dumps(obj) -> str:
    """Deterministic JSON: no whitespace, insertion field order, plain floats."""
    return json.dumps(_plain(obj), separators=(",", ":"), allow_nan=False)


# ---------------------------------------------------------------------------
# Curve documents


def curve_to_doc(curve: Curve) -> dict:
    n = curve.n
    coeffs = [
        [k, float(curve.coeffs[n + k].real), float(curve.coeffs[n + k].imag)]
        for k in range(-n, n + 1)
    ]
    return {"type": "fourier", "n": n, "coeffs": coeffs}


def parse_curve_doc(doc) -> Curve:
    """Build a Curve from a parsed document, rejecting malformed input.

    Requires type "fourier", integer n >= 1, and coeff rows [k, re, im]
    with |k| <= n and no duplicate k.  Unlisted k default to zero.
    """
    if not isinstance(doc, dict):
        raise ParseError("curve document must be a JSON object")
    if doc.get("type") != "fourier":
        raise ParseError(f"unsupported curve type {doc.get('type')!r}")
    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("field 'n' must be a positive integer")
    rows = doc.get("coeffs")
    if not isinstance(rows, list) or not rows:
        raise ParseError("field 'coeffs' must be a non-empty list")

    coeffs = np.zeros(2 * n + 1, dtype=complex)
    seen = set()
    for pos, row in enumerate(rows):
        if (
            not isinstance(row, (list, tuple))
            or len(row) != 3
            or isinstance(row[0], bool)
            or not isinstance(row[0], int)
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row[1:])
        ):
            raise ParseError(f"coeffs[{pos}]: expected [k, re, im]")
        k, re, im = row
        if abs(k) > n:
            raise ParseError(f"coeffs[{pos}]: harmonic {k} exceeds cutoff n={n}")
        if k in seen:
            raise ParseError(f"coeffs[{pos}]: duplicate harmonic {k}")
        seen.add(k)
        coeffs[n + k] = complex(re, im)
    return Curve(coeffs=coeffs)


def parse_curve_text(text: str) -> Curve:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_curve_doc(doc)


# ---------------------------------------------------------------------------
# Profile documents


def profile_to_doc(profile: AspectProfile) -> dict:
    if profile.kind in ("constant", "polynomial"):
        return {"kind": "polynomial", "coeffs": [float(c) for c in profile.coeffs]}
    return {
        "kind": "table",
        "points": [
            [float(r), float(p)] for r, p in zip(profile.knots_r, profile.knots_phi)
        ],
    }


def parse_profile_doc(doc) -> AspectProfile:
    if not isinstance(doc, dict):
        raise ParseError("profile document must be a JSON object")
    kind = doc.get("kind")
    if kind == "polynomial":
        coeffs = doc.get("coeffs")
        if not isinstance(coeffs, list) or not coeffs or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in coeffs
        ):
            raise ParseError("polynomial profile needs numeric 'coeffs'")
        return AspectProfile.polynomial([float(c) for c in coeffs])
    if kind == "table":
        points = doc.get("points")
        if not isinstance(points, list) or not points:
            raise ParseError("table profile needs 'points'")
        for pos, row in enumerate(points):
            if (
                not isinstance(row, (list, tuple))
                or len(row) != 2
                or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in row)
            ):
                raise ParseError(f"points[{pos}]: expected [r, phi]")
        return AspectProfile.table([[float(r), float(p)] for r, p in points])
    raise ParseError(f"unsupported profile kind {kind!r}")


def parse_profile_text(text: str) -> AspectProfile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    return parse_profile_doc(doc)


# ---------------------------------------------------------------------------
# Solution records


def solution_to_record(sol: RectangleSolution) -> dict:
    return {
        "params": [float(x) for x in sol.params],
        "center": [sol.center.real, sol.center.imag],
        "half_diag": float(sol.half_diag),
        "theta": float(sol.theta),
        "phi": float(sol.phi),
        "vertices": [[v.real, v.imag] for v in sol.vertices],
        "residual_norm": float(sol.residual_norm),
    }


def record_to_solution(rec) -> RectangleSolution:
    if not isinstance(rec, dict):
        raise ParseError("solution record must be a JSON object")
    try:
        return RectangleSolution(
            params=tuple(float(x) for x in rec["params"]),
            center=complex(rec["center"][0], rec["center"][1]),
            half_diag=float(rec["half_diag"]),
            theta=float(rec["theta"]),
            phi=float(rec["phi"]),
            vertices=np.array([complex(x, y) for x, y in rec["vertices"]]),
            residual_norm=float(rec["residual_norm"]),
        )
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"malformed solution record: {exc}") from exc


def report_to_dict(report: CurveValidityReport) -> dict:
    out = {
        "is_immersed": bool(report.is_immersed),
        "min_speed": float(report.min_speed),
        "is_simple": bool(report.is_simple),
    }
    if report.first_crossing is not None:
        out["first_crossing"] = [float(report.first_crossing[0]), float(report.first_crossing[1])]
    else:
        out["first_crossing"] = None
    return out
