"""HTTP JSON API over the same job dispatch the CLI uses.

POST /api/solve, /api/sweep, /api/porism, /api/verify take JobRequest
fields (mode implied by the path); POST /api/fit turns a raw point list
into a curve document plus validity report; GET /api/presets lists the
built-in curves.  Responses are serialized with the shared canonical
serializer, so solution records are byte-identical to CLI output.
Errors come back as {code, message, detail}.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import jobs, wire
from .curves import fit_deviation, fit_from_points, validate
from .errors import (
    InscribedError,
    NoSolutionFound,
    NotConverged,
    ParseError,
    TooFewPoints,
    UnknownPreset,
    ValidationFailed,
)

_STATUS = {
    ParseError: 400,
    TooFewPoints: 400,
    ValidationFailed: 400,
    UnknownPreset: 404,
    NoSolutionFound: 422,
    NotConverged: 422,
}


def _error_response(exc: Exception) -> JSONResponse:
    status = 400 if isinstance(exc, ValueError) else 500
    for klass, code in _STATUS.items():
        if isinstance(exc, klass):
            status = code
            break
    return JSONResponse(status_code=status, content=jobs.wrap_error(exc))


def _canonical(payload: dict, status: int = 200) -> Response:
    return Response(
        content=wire.canonical_dumps(payload),
        status_code=status,
        media_type="application/json",
    )


def create_app(static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="inscribed", docs_url=None, redoc_url=None)

    @app.exception_handler(InscribedError)
    async def _domain_error(_req: Request, exc: InscribedError):
        return _error_response(exc)

    @app.exception_handler(ValueError)
    async def _value_error(_req: Request, exc: ValueError):
        return _error_response(exc)

    def _run_mode(mode: str, body: dict) -> Response:
        if not isinstance(body, dict):
            raise ParseError("request body must be a JSON object")
        # The curve field accepts a document, a preset name, or a raw
        # point list; route the latter two to their dedicated slots.
        cur = body.get("curve")
        if isinstance(cur, str):
            body = dict(body, preset=body.pop("curve"))
        elif isinstance(cur, list):
            body = dict(body, points=body.pop("curve"))
        allowed = {
            "preset",
            "curve",
            "points",
            "phi",
            "phi_lo",
            "phi_hi",
            "steps",
            "profile",
            "grid",
            "slack",
            "config",
        }
        unknown = sorted(set(body) - allowed)
        if unknown:
            raise ValueError(f"unknown request fields: {', '.join(unknown)}")
        req = jobs.JobRequest(mode=mode, **body)
        result = jobs.run(req)
        return _canonical(result.to_payload())

    @app.post("/api/solve")
    async def solve(request: Request):
        return _run_mode("solve", await request.json())

    @app.post("/api/sweep")
    async def sweep(request: Request):
        return _run_mode("sweep", await request.json())

    @app.post("/api/porism")
    async def porism(request: Request):
        return _run_mode("porism", await request.json())

    @app.post("/api/verify")
    async def verify(request: Request):
        return _run_mode("verify", await request.json())

    @app.post("/api/fit")
    async def fit(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "points" not in body:
            raise ParseError("fit expects {points: [[x, y], ...], cutoff?: int}")
        cutoff = body.get("cutoff", 12)
        if not isinstance(cutoff, int) or isinstance(cutoff, bool) or cutoff < 1:
            raise ValueError("cutoff must be a positive integer")
        pts = np.asarray(body["points"], dtype=float)
        curve = fit_from_points(pts, cutoff=cutoff)
        report = validate(curve)
        payload = {
            "curve": wire.curve_to_doc(curve),
            "report": wire.report_to_dict(report),
            "deviation": float(fit_deviation(pts, curve)),
        }
        return _canonical(payload)

    @app.get("/api/presets")
    async def presets():
        return _canonical({"presets": jobs.describe_presets()})

    if static_dir:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
