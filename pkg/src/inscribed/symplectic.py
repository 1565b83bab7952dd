"""Maps on C^2 = R^4 used by the torus reduction, and their form defects.

Coordinates: a point is the complex pair (z, w).  After ``split_pair`` the
pair encodes (midpoint, half-difference) of two plane points.  Tangent
vectors are real 4-vectors laid out as (z.re, z.im, w.re, w.im).

The reference 2-form is omega(u, v) = Im(conj(u_z) v_z) + Im(conj(u_w) v_w),
i.e. the sum of the coordinate area forms.  ``pullback_defect`` measures how
far a map is from scaling omega by a given factor.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import Curve, derivative, IMMERSION_EPS_REL
from .errors import DegenerateTangent, TooCloseToAxis
from .profiles import AspectProfile

SQRT2 = float(np.sqrt(2.0))

#: omega as a matrix: omega(u, v) = u @ OMEGA @ v
OMEGA = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)


@dataclass(frozen=True)
class SymplecticPoint:
    z: complex
    w: complex

    @property
    def radius(self) -> float:
        return abs(self.w)

    @property
    def angle(self) -> float:
        return float(np.mod(np.angle(self.w), 2.0 * np.pi))

    def as_vector(self) -> np.ndarray:
        return np.array([self.z.real, self.z.imag, self.w.real, self.w.imag])

    @staticmethod
    def from_vector(v) -> "SymplecticPoint":
        v = np.asarray(v, dtype=float)
        return SymplecticPoint(complex(v[0], v[1]), complex(v[2], v[3]))


def tangent4(dz: complex, dw: complex) -> np.ndarray:
    return np.array([dz.real, dz.imag, dw.real, dw.imag])


def symplectic_form(u, v):
    """omega(u, v) on 4-vectors; broadcasts over leading axes."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return (
        u[..., 0] * v[..., 1]
        - u[..., 1] * v[..., 0]
        + u[..., 2] * v[..., 3]
        - u[..., 3] * v[..., 2]
    )


# ---------------------------------------------------------------------------
# The maps


def split_pair(p: SymplecticPoint) -> SymplecticPoint:
    """(z, w) -> ((z+w)/2, (z-w)/2): midpoint and half-difference."""
    return SymplecticPoint((p.z + p.w) / 2.0, (p.z - p.w) / 2.0)


def unsplit_pair(p: SymplecticPoint) -> SymplecticPoint:
    """Inverse of split_pair: (m, h) -> (m+h, m-h)."""
    return SymplecticPoint(p.z + p.w, p.z - p.w)


def double_angle(p: SymplecticPoint) -> SymplecticPoint:
    """Double the angle of w and shrink its radius by sqrt(2).

    Identifies w with -w (the half-difference of an unordered pair is
    defined up to sign), at the price of smoothness on the axis w = 0.
    """
    if p.w == 0:
        return SymplecticPoint(p.z, 0.0 + 0.0j)
    return SymplecticPoint(p.z, p.w * p.w / (SQRT2 * abs(p.w)))


def rotate_second(p: SymplecticPoint, phi: float) -> SymplecticPoint:
    """Rotate the half-difference plane by phi."""
    return SymplecticPoint(p.z, p.w * np.exp(1j * phi))


def twist_second(p: SymplecticPoint, profile: AspectProfile) -> SymplecticPoint:
    """Rotate the half-difference by the profile angle at diagonal 2|w|."""
    return SymplecticPoint(p.z, p.w * np.exp(1j * profile.value(2.0 * abs(p.w))))


#: Constant Jacobian of split_pair (the map is linear).
SPLIT_JACOBIAN = 0.5 * np.array(
    [
        [1.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 1.0],
        [1.0, 0.0, -1.0, 0.0],
        [0.0, 1.0, 0.0, -1.0],
    ]
)


def rotate_jacobian(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    jac = np.eye(4)
    jac[2:, 2:] = [[c, -s], [s, c]]
    return jac


# ---------------------------------------------------------------------------
# Unordered-pair invariants


def midpoint_and_length(a: complex, b: complex) -> tuple[complex, float]:
    """Midpoint and span length of an unordered pair of plane points."""
    return (a + b) / 2.0, abs(a - b)


def midpoint_and_power(a: complex, b: complex, order: int = 1) -> tuple[complex, complex]:
    """Midpoint and the (2*order)-th power of the difference.

    The even power makes the second component swap-invariant, giving a
    smooth injection of unordered pairs for each order >= 1.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    return (a + b) / 2.0, (a - b) ** (2 * order)


# ---------------------------------------------------------------------------
# Jacobians and form defects


def jacobian_fd(transform, p: SymplecticPoint, step: float | None = None) -> np.ndarray:
    """Central-difference 4x4 Jacobian of a map on C^2."""
    x = p.as_vector()
    if step is None:
        step = 1e-6 * max(1.0, float(np.linalg.norm(x)))
    cols = []
    for i in range(4):
        forward = x.copy()
        backward = x.copy()
        forward[i] += step
        backward[i] -= step
        fp = transform(SymplecticPoint.from_vector(forward)).as_vector()
        fm = transform(SymplecticPoint.from_vector(backward)).as_vector()
        cols.append((fp - fm) / (2.0 * step))
    return np.column_stack(cols)


def pullback_defect(
    transform,
    p: SymplecticPoint,
    scale: float,
    jacobian=None,
    min_radius: float = 1e-9,
) -> float:
    """Max-norm of J^T Omega J - scale * Omega at p.

    ``jacobian`` may be a constant matrix or a callable; when omitted the
    Jacobian is taken by central differences, which requires p to sit away
    from the axis (|w| > min_radius) since the angle-doubling and twist
    maps are not differentiable there.
    """
    if jacobian is None:
        if abs(p.w) <= min_radius:
            raise TooCloseToAxis(f"|w| = {abs(p.w):g} <= {min_radius:g}")
        jac = jacobian_fd(transform, p)
    elif callable(jacobian):
        jac = np.asarray(jacobian(p), dtype=float)
    else:
        jac = np.asarray(jacobian, dtype=float)
    defect = jac.T @ OMEGA @ jac - scale * OMEGA
    return float(np.abs(defect).max())


def lagrangian_defect(curve: Curve, s, t):
    """|omega| on the normalized split-torus tangent frame at (s, t).

    The torus swept by split_pair(gamma(s), gamma(t)) should be Lagrangian:
    omega vanishes on its tangent planes.  Accepts scalars or arrays.
    """
    scalar = np.isscalar(s) and np.isscalar(t)
    s = np.atleast_1d(np.asarray(s, dtype=float))
    t = np.atleast_1d(np.asarray(t, dtype=float))
    a = derivative(curve, s)
    b = derivative(curve, t)
    eps = IMMERSION_EPS_REL * curve.diameter
    if np.any(np.abs(a) <= eps) or np.any(np.abs(b) <= eps):
        raise DegenerateTangent("tangent speed below immersion threshold")

    # D(split)(a, 0) = (a/2, a/2);  D(split)(0, b) = (b/2, -b/2)
    u = np.stack([a.real / 2, a.imag / 2, a.real / 2, a.imag / 2], axis=-1)
    v = np.stack([b.real / 2, b.imag / 2, -b.real / 2, -b.imag / 2], axis=-1)
    u = u / np.linalg.norm(u, axis=-1, keepdims=True)
    v = v / np.linalg.norm(v, axis=-1, keepdims=True)
    out = np.abs(symplectic_form(u, v))
    if scalar:
        return float(out[0])
    return out
