"""Command-line driver.

Verbs: solve, sweep, porism, oracle, verify, serve.  Results go to
stdout as a short human summary; full records are written as
line-delimited JSON to --out.  Errors print a {code, message, detail}
object to stderr and exit nonzero.  Exit code 0 means no errors and,
for verify, that every check passed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import jobs, wire
from .errors import InscribedError


def _add_curve_arg(p):
    p.add_argument(
        "--curve",
        required=True,
        metavar="FILE|PRESET",
        help="curve document path, or a preset name such as circle or ellipse(2,1)",
    )


def _add_out_arg(p):
    p.add_argument("--out", metavar="PATH", help="write records as JSON lines")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="inscribed",
        description="Find rectangles of prescribed aspect angle inscribed in smooth closed curves.",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", help="all rectangles at a fixed aspect angle")
    _add_curve_arg(p)
    p.add_argument("--phi", type=float, required=True, help="aspect angle in radians, (0, pi/2]")
    p.add_argument("--tol", type=float, help="residual acceptance tolerance override")
    p.add_argument("--grid", type=int, help="pair enumeration grid (default 256)")
    _add_out_arg(p)

    p = sub.add_parser("sweep", help="continuation sweep over aspect angles")
    _add_curve_arg(p)
    p.add_argument("--phi-lo", type=float, required=True)
    p.add_argument("--phi-hi", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--grid", type=int)
    _add_out_arg(p)

    p = sub.add_parser("porism", help="rectangles whose angle depends on their own diameter")
    _add_curve_arg(p)
    p.add_argument("--profile", required=True, metavar="FILE", help="profile document path")
    p.add_argument("--grid", type=int)
    _add_out_arg(p)

    p = sub.add_parser("oracle", help="brute-force grid enumeration, no refinement")
    _add_curve_arg(p)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--slack", type=float, default=0.05)
    _add_out_arg(p)

    p = sub.add_parser("verify", help="numerical identity checks for a curve")
    _add_curve_arg(p)
    _add_out_arg(p)

    p = sub.add_parser("serve", help="run the HTTP API (and optionally static UI assets)")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--static-dir", metavar="DIR", help="directory of UI assets to serve at /")
    return ap


def _curve_source(spec: str) -> dict:
    """--curve accepts a file path or a preset name."""
    if os.path.exists(spec):
        with open(spec, encoding="utf-8") as fh:
            text = fh.read()
        curve = wire.parse_curve_text(text)
        return {"curve": wire.curve_to_doc(curve)}
    return {"preset": spec}


def _request_from_args(args) -> jobs.JobRequest:
    kw = _curve_source(args.curve)
    config = {}
    if getattr(args, "grid", None):
        config["pair_grid"] = args.grid
    if getattr(args, "tol", None):
        config["accept_tol"] = args.tol

    if args.verb == "solve":
        return jobs.JobRequest(mode="solve", phi=args.phi, config=config, **kw)
    if args.verb == "sweep":
        return jobs.JobRequest(
            mode="sweep",
            phi_lo=args.phi_lo,
            phi_hi=args.phi_hi,
            steps=args.steps,
            config=config,
            **kw,
        )
    if args.verb == "porism":
        with open(args.profile, encoding="utf-8") as fh:
            profile = wire.parse_profile_doc(json.load(fh))
        return jobs.JobRequest(
            mode="porism", profile=wire.profile_to_doc(profile), config=config, **kw
        )
    if args.verb == "oracle":
        return jobs.JobRequest(
            mode="oracle", phi=args.phi, grid=args.grid, slack=args.slack, **kw
        )
    return jobs.JobRequest(mode="verify", **kw)


def _emit_records(result: jobs.JobResult, path: str | None) -> None:
    if not path:
        return
    lines = []
    if result.solutions is not None:
        lines = [wire.canonical_dumps(r) for r in result.solutions]
    elif result.sweep is not None:
        for phi, entry in zip(result.sweep["phis"], result.sweep["entries"]):
            for rec in entry:
                lines.append(wire.canonical_dumps({"phi_step": phi, **rec}))
    elif result.hits is not None:
        lines = [wire.canonical_dumps(h) for h in result.hits]
    elif result.report is not None:
        lines = [wire.canonical_dumps(row) for row in result.report["checks"]]
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + ("\n" if lines else ""))


def _summarize(result: jobs.JobResult) -> str:
    if result.mode in ("solve", "porism"):
        n = len(result.solutions)
        sizes = ", ".join(f"{r['half_diag']:.6g}" for r in result.solutions[:8])
        out = f"{n} solution(s); half-diagonals: {sizes}"
    elif result.mode == "sweep":
        entries = result.sweep["entries"]
        out = (
            f"{len(entries)} steps, {sum(len(e) for e in entries)} solutions, "
            f"{sum(len(l) for l in result.sweep['links'])} branch links"
        )
    elif result.mode == "oracle":
        out = f"{len(result.hits)} grid hits"
    else:
        rows = result.report["checks"]
        out = "\n".join(
            f"{'PASS' if r['pass'] else 'FAIL'}  {r['check']}"
            f"  (defect {r['max_defect']:.3g}, tol {r['tol']:g})"
            for r in rows
        )
        out += f"\noverall: {'PASS' if result.report['ok'] else 'FAIL'}"
    if result.warnings:
        out += "\n" + "\n".join(f"warning: {w}" for w in result.warnings)
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.verb == "serve":
        import uvicorn

        from .server import create_app

        app = create_app(static_dir=args.static_dir)
        uvicorn.run(app, host=args.host, port=args.port, log_level="info")
        return 0

    try:
        req = _request_from_args(args)
        result = jobs.run(req)
    except (InscribedError, ValueError, OSError) as exc:
        print(json.dumps(jobs.wrap_error(exc)), file=sys.stderr)
        return 1

    _emit_records(result, getattr(args, "out", None))
    print(_summarize(result))
    return 0 if result.ok else 1


if __name__ == "__main__":
    sys.exit(main())
