"""Aspect-angle profiles: maps from diagonal length to an angle in (0, pi).

A constant profile fixes one target angle; polynomial and table profiles
let the target angle vary with the rectangle's diagonal length, which is
what the variable-angle (porism-style) solve consumes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import ParseError, ProfileOutOfRange


@dataclass(frozen=True, eq=False)
class AspectProfile:
    """Angle profile phi(r), valid only while its values stay in (0, pi)."""

    kind: str  # "constant" | "polynomial" | "table"
    coeffs: np.ndarray | None = None  # polynomial coefficients, low order first
    knots_r: np.ndarray | None = None  # table abscissae, strictly increasing
    knots_phi: np.ndarray | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def constant(value: float) -> "AspectProfile":
        value = float(value)
        if not (0.0 < value < np.pi):
            raise ProfileOutOfRange(f"constant angle {value:g} outside (0, pi)")
        return AspectProfile(kind="constant", coeffs=np.array([value]))

    @staticmethod
    def polynomial(coeffs) -> "AspectProfile":
        c = np.asarray(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ParseError("polynomial needs a non-empty 1-d coefficient list")
        return AspectProfile(kind="polynomial", coeffs=c)

    @staticmethod
    def table(points) -> "AspectProfile":
        pts = np.asarray(points, dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 2:
            raise ParseError("table needs at least two [r, phi] rows")
        r, phi = pts[:, 0], pts[:, 1]
        if not np.all(np.diff(r) > 0):
            raise ParseError("table abscissae must be strictly increasing")
        if not np.all((phi > 0) & (phi < np.pi)):
            raise ProfileOutOfRange("table angles must lie in (0, pi)")
        return AspectProfile(kind="table", knots_r=r, knots_phi=phi)

    # -- evaluation ---------------------------------------------------

    @property
    def is_constant(self) -> bool:
        return self.kind == "constant"

    def value(self, r):
        """Evaluate phi(r); raises ProfileOutOfRange when outside (0, pi).

        Table profiles clamp outside their abscissa range.
        """
        scalar = np.isscalar(r) or np.ndim(r) == 0
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            out = np.full(r.shape, self.coeffs[0])
        elif self.kind == "polynomial":
            out = P.polyval(r, self.coeffs)
        else:
            out = np.interp(r, self.knots_r, self.knots_phi)
        bad = ~((out > 0.0) & (out < np.pi))
        if np.any(bad):
            r_bad = float(np.asarray(r)[bad][0] if r.shape else r)
            raise ProfileOutOfRange(
                f"profile value {float(np.asarray(out)[bad][0] if out.shape else out):g} "
                f"at r={r_bad:g} outside (0, pi)"
            )
        if scalar:
            return float(out)
        return out

    def slope(self, r):
        """Derivative d phi / d r (segment slope for tables, 0 when clamped)."""
        scalar = np.isscalar(r) or np.ndim(r) == 0
        r = np.asarray(r, dtype=float)
        if self.kind == "constant":
            out = np.zeros(r.shape)
        elif self.kind == "polynomial":
            out = P.polyval(r, P.polyder(self.coeffs)) if self.coeffs.size > 1 else np.zeros(r.shape)
        else:
            slopes = np.diff(self.knots_phi) / np.diff(self.knots_r)
            seg = np.clip(np.searchsorted(self.knots_r, r, side="right") - 1, 0, slopes.size - 1)
            out = slopes[seg]
            out = np.where((r < self.knots_r[0]) | (r > self.knots_r[-1]), 0.0, out)
        if scalar:
            return float(out)
        return out

    __call__ = value

    def check_domain(self, lo: float, hi: float, samples: int = 512) -> None:
        """Raise ProfileOutOfRange unless values on [lo, hi] stay in (0, pi)."""
        self.value(np.linspace(lo, hi, samples))
