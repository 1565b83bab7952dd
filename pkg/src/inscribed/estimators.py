"""Scikit-learn style wrappers around the curve fitter and the solver.

The functional API (curves.fit_from_points, solver.solve_all, ...) is the
primary surface; these classes exist so the package drops into sklearn
pipelines and parameter searches.  Constructor arguments are stored
verbatim (so get_params/set_params work), fitted state lands in
trailing-underscore attributes, and fit returns self.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from . import solver, wire
from .curves import TWO_PI, Curve, evaluate, fit_deviation, fit_from_points, preset, validate
from .solver import SolverConfig


def _as_curve(obj, cutoff: int = 12) -> Curve:
    """Coerce a Curve, preset name, curve document, or (m, 2) point array."""
    if isinstance(obj, Curve):
        return obj
    if isinstance(obj, str):
        return preset(obj)
    if isinstance(obj, dict):
        return wire.parse_curve_doc(obj)
    return fit_from_points(np.asarray(obj, dtype=float), cutoff=cutoff)


class FourierCurveFitter(BaseEstimator):
    """Fit a band-limited closed plane curve through sampled points.

    Parameters
    ----------
    cutoff : int, default 12
        Highest Fourier harmonic kept; the fitted curve has coefficients
        for |k| <= cutoff.

    Attributes
    ----------
    curve_ : Curve
        The fitted curve.
    report_ : CurveValidityReport
        Immersion / simplicity report for the fitted curve.
    deviation_ : float
        Max distance from the input points to the fitted curve.
    """

    def __init__(self, cutoff: int = 12):
        self.cutoff = cutoff

    def fit(self, X, y=None):
        """Fit the curve through the closed polygon X of shape (m, 2)."""
        pts = np.asarray(X, dtype=float)
        self.curve_ = fit_from_points(pts, cutoff=self.cutoff)
        self.report_ = validate(self.curve_)
        self.deviation_ = fit_deviation(pts, self.curve_)
        return self

    def predict(self, S):
        """Evaluate the fitted curve at angles S, returning (len(S), 2) points."""
        if not hasattr(self, "curve_"):
            raise NotFittedError("FourierCurveFitter: call fit before predict")
        s = np.mod(np.asarray(S, dtype=float).ravel(), TWO_PI)
        z = evaluate(self.curve_, s)
        return np.column_stack([z.real, z.imag])


class RectangleFinder(BaseEstimator):
    """Find rectangles of prescribed aspect angle inscribed in a closed curve.

    Parameters
    ----------
    phi : float, default pi/2
        Aspect angle (between the diagonals) in (0, pi/2]; pi/2 means squares.
    pair_grid : int, default 256
        Parameter grid resolution for seeding.
    angle_slack, length_slack : float
        Seeding tolerances (radians / relative length).
    accept_tol, dedup_tol, r_min : float or None
        Acceptance, dedup, and degeneracy thresholds; None derives them
        from the curve scale.
    max_seeds : int, default 20000
        Cap on refined seeds per solve.
    retry : bool, default True
        Retry once with pair_grid doubled when nothing is found.
    cutoff : int, default 12
        Harmonic cutoff used when fit() receives raw points.

    Attributes
    ----------
    curve_ : Curve fitted or coerced from the fit input.
    solutions_ : list of RectangleSolution at angle phi.
    warnings_ : list of retry notices.
    """

    def __init__(
        self,
        phi: float = np.pi / 2,
        pair_grid: int = 256,
        angle_slack: float = 0.15,
        length_slack: float = 0.1,
        accept_tol: float | None = None,
        dedup_tol: float | None = None,
        r_min: float | None = None,
        max_seeds: int = 20000,
        retry: bool = True,
        cutoff: int = 12,
    ):
        self.phi = phi
        self.pair_grid = pair_grid
        self.angle_slack = angle_slack
        self.length_slack = length_slack
        self.accept_tol = accept_tol
        self.dedup_tol = dedup_tol
        self.r_min = r_min
        self.max_seeds = max_seeds
        self.retry = retry
        self.cutoff = cutoff

    def _config(self) -> SolverConfig:
        return SolverConfig(
            pair_grid=self.pair_grid,
            angle_slack=self.angle_slack,
            length_slack=self.length_slack,
            accept_tol=self.accept_tol,
            dedup_tol=self.dedup_tol,
            r_min=self.r_min,
            max_seeds=self.max_seeds,
        )

    def _solve(self, phi: float):
        if self.retry:
            return solver.solve_all_retry(self.curve_, phi, self._config())
        return solver.solve_all(self.curve_, phi, self._config()), []

    def fit(self, X, y=None):
        """Solve for rectangles at angle phi inscribed in the curve X.

        X may be a Curve, a preset name, a curve document dict, or an
        (m, 2) array of points (fitted with the configured cutoff).
        """
        self.curve_ = _as_curve(X, cutoff=self.cutoff)
        self.solutions_, self.warnings_ = self._solve(float(self.phi))
        return self

    def predict(self, phis=None):
        """Solve at each angle in phis; returns a list of solution lists.

        With phis=None, returns [solutions_] for the configured phi.
        """
        if not hasattr(self, "curve_"):
            raise NotFittedError("RectangleFinder: call fit before predict")
        if phis is None:
            return [list(self.solutions_)]
        return [self._solve(float(p))[0] for p in np.asarray(phis, dtype=float).ravel()]
