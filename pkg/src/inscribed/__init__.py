"""Inscribed rectangles in smooth closed plane curves.

Numerical search for rectangles with a prescribed diagonal-crossing angle
whose four vertices lie on a given curve, plus verification of the
symplectic identities behind the reduction to a torus intersection
problem.
"""

from .curves import (
    CORPUS,
    Curve,
    CurveValidityReport,
    derivative,
    evaluate,
    fit_from_points,
    preset,
    preset_names,
    rotated,
    translated,
    validate,
)
from .estimators import FourierCurveFitter, RectangleFinder
from .profiles import AspectProfile
from .solver import (
    OracleHit,
    SolverConfig,
    SweepResult,
    cluster_params,
    oracle_solve,
    params_distance,
    refine,
    seed_candidates,
    solve_all,
    solve_all_retry,
    solve_porism,
    sweep,
)
from .system import (
    RectangleSolution,
    aspect_angle_from_ratio,
    canonical,
    rectangle_from_params,
    residual,
    residual_jacobian,
    verify_rectangle,
)

__all__ = [
    "CORPUS",
    "AspectProfile",
    "Curve",
    "CurveValidityReport",
    "FourierCurveFitter",
    "OracleHit",
    "RectangleFinder",
    "RectangleSolution",
    "SolverConfig",
    "SweepResult",
    "aspect_angle_from_ratio",
    "canonical",
    "cluster_params",
    "derivative",
    "evaluate",
    "fit_from_points",
    "oracle_solve",
    "params_distance",
    "preset",
    "preset_names",
    "rectangle_from_params",
    "refine",
    "residual",
    "residual_jacobian",
    "rotated",
    "seed_candidates",
    "solve_all",
    "solve_all_retry",
    "solve_porism",
    "sweep",
    "translated",
    "validate",
    "verify_rectangle",
]

__version__ = "0.1.0"
