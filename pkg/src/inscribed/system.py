"""The four-equation system whose roots are inscribed rectangles.

For parameters u = (s, t, s2, t2) on the 4-torus let A = gamma(s),
B = gamma(t), C = gamma(s2), D = gamma(t2).  The residual stacks

    E1 = (A + B) - (C + D)            midpoints of the two diagonals agree
    E2 = (A - B) - e^{i phi(|C-D|)} (C - D)   equal length, prescribed angle

as four reals.  At a root, (A, B) and (C, D) are the diagonals of a
rectangle inscribed in the curve whose diagonals cross at the profile
angle.  The degenerate branch A = B = C = D also solves the system and is
rejected by a minimum half-diagonal threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .curves import Curve, _basis
from .errors import DegenerateRectangle, NonpositiveSide, NotConverged
from .profiles import AspectProfile

TWO_PI = 2.0 * np.pi

# Scale-relative defaults: thresholds multiply the curve diameter.
ACCEPT_TOL_REL = 1e-10  # max residual norm for an accepted root
R_MIN_REL = 1e-6  # minimum half-diagonal of a nondegenerate rectangle
SNAP_TOL_REL = 1e-7  # vertex quantum for canonical ordering / dedup keys


def wrap_angles(u):
    return np.mod(np.asarray(u, dtype=float), TWO_PI)


def _curve_points_and_tangents(curve: Curve, u):
    basis = _basis(u, curve.n)
    return basis @ curve.coeffs, basis @ curve._deriv_coeffs


def residual(curve: Curve, u, profile: AspectProfile):
    """Residual of the rectangle system; u has shape (..., 4)."""
    u = np.asarray(u, dtype=float)
    pts = _basis(u, curve.n) @ curve.coeffs
    a, b, c, d = (pts[..., i] for i in range(4))
    diff = c - d
    rho = np.abs(diff)
    rot = np.exp(1j * profile.value(rho))
    e1 = (a + b) - (c + d)
    e2 = (a - b) - rot * diff
    return np.stack([e1.real, e1.imag, e2.real, e2.imag], axis=-1)


def residual_jacobian(curve: Curve, u, profile: AspectProfile):
    """Analytic 4x4 Jacobian of the residual w.r.t. (s, t, s2, t2)."""
    u = np.asarray(u, dtype=float)
    pts, der = _curve_points_and_tangents(curve, u)
    c, d = pts[..., 2], pts[..., 3]
    da, db, dc, dd = (der[..., i] for i in range(4))

    diff = c - d
    rho = np.abs(diff)
    phi = profile.value(rho)
    slope = profile.slope(rho)
    rot = np.exp(1j * phi)

    inv_rho = np.where(rho > 0, 1.0 / np.where(rho > 0, rho, 1.0), 0.0)
    # d rho / d s2 = Re(conj(diff) dc) / rho ; d rho / d t2 = -Re(conj(diff) dd) / rho
    drho_ds2 = (diff.conj() * dc).real * inv_rho
    drho_dt2 = -(diff.conj() * dd).real * inv_rho
    chain = 1j * slope * rot * diff  # d(e^{i phi(rho)} diff)/d rho, angle part

    cols = [
        (da, da),
        (db, -db),
        (-dc, -(rot * dc) - chain * drho_ds2),
        (-dd, rot * dd - chain * drho_dt2),
    ]
    jac = np.empty(u.shape[:-1] + (4, 4), dtype=float)
    for j, (de1, de2) in enumerate(cols):
        jac[..., 0, j] = de1.real
        jac[..., 1, j] = de1.imag
        jac[..., 2, j] = de2.real
        jac[..., 3, j] = de2.imag
    return jac


@dataclass(frozen=True)
class RectangleSolution:
    """One inscribed rectangle.

    vertices run cyclically around the rectangle as (A, C, B, D), so
    vertices[0]/vertices[2] form one diagonal and vertices[1]/vertices[3]
    the other.  params holds the system root (s, t, s2, t2) in [0, 2 pi);
    vertices are exactly the curve evaluations at params (A, B, C, D
    reordered cyclically).
    """

    params: tuple[float, float, float, float]
    center: complex
    half_diag: float
    theta: float
    phi: float
    vertices: np.ndarray  # complex, shape (4,)
    residual_norm: float

    def vertex_array(self) -> np.ndarray:
        """Vertices as an (4, 2) float array."""
        v = self.vertices
        return np.column_stack([v.real, v.imag])


def rectangle_from_params(
    curve: Curve,
    u,
    profile: AspectProfile,
    accept_tol: float | None = None,
    r_min: float | None = None,
) -> RectangleSolution:
    """Assemble a RectangleSolution from a refined root.

    Raises NotConverged when the residual norm exceeds accept_tol and
    DegenerateRectangle when the half-diagonal falls below r_min.
    """
    diam = curve.diameter
    if accept_tol is None:
        accept_tol = ACCEPT_TOL_REL * diam
    if r_min is None:
        r_min = R_MIN_REL * diam

    u = wrap_angles(np.asarray(u, dtype=float).reshape(4))
    res = residual(curve, u, profile)
    res_norm = float(np.abs(res).max())
    if not np.isfinite(res_norm) or res_norm > accept_tol:
        raise NotConverged(f"residual norm {res_norm:g} above {accept_tol:g}")

    pts = _basis(u, curve.n) @ curve.coeffs
    a, b, c, d = (complex(pts[i]) for i in range(4))
    rho = abs(c - d)
    half = rho / 2.0
    if half < r_min:
        raise DegenerateRectangle(f"half-diagonal {half:g} below {r_min:g}")

    psi = profile.value(rho)
    if psi <= 0.5 * np.pi:
        phi = psi
        vertices = np.array([a, c, b, d])
        theta = np.angle(c - d)
        params = u
    else:
        # Fold obtuse angles to acute by swapping the diagonal roles: the
        # reordered parameters solve the mirrored system at angle pi - psi
        # and the vertex cycle merely starts one corner later.
        phi = np.pi - psi
        vertices = np.array([c, b, d, a])
        theta = np.angle(b - a)
        params = u[[2, 3, 1, 0]]
        half = abs(b - a) / 2.0

    return RectangleSolution(
        params=tuple(float(x) for x in params),
        center=complex((a + b + c + d) / 4.0),
        half_diag=float(half),
        theta=float(np.mod(theta, TWO_PI)),
        phi=float(phi),
        vertices=vertices,
        residual_norm=res_norm,
    )


# Cyclic rotations of the vertex list and the matching params reorderings.
# Rotation by 2 relabels both diagonal endpoints (always a root); rotations
# by 1 and 3 exchange the two diagonals, a root only for square aspect.
_ROTATION_PARAMS = {
    0: (0, 1, 2, 3),
    1: (2, 3, 1, 0),
    2: (1, 0, 3, 2),
    3: (3, 2, 0, 1),
}


def _vertex_key(vertices: np.ndarray, snap: float):
    q = np.round(
        np.concatenate([vertices.real[:, None], vertices.imag[:, None]], axis=1) / snap
    ).astype(np.int64)
    return tuple(q.ravel())


def canonical(sol: RectangleSolution, snap_tol: float | None = None) -> RectangleSolution:
    """Deterministic representative of a solution's relabeling orbit.

    Picks the cyclic rotation of the vertex list with the smallest
    quantized lexicographic key.  Idempotent; solutions refining to the
    same rectangle from different seeds map to identical canonical forms.
    """
    if snap_tol is None:
        snap_tol = SNAP_TOL_REL * max(1.0, 4.0 * sol.half_diag)

    rotations = [0, 2]
    if abs(sol.phi - 0.5 * np.pi) <= 1e-9:
        rotations = [0, 1, 2, 3]

    best = None
    best_key = None
    for r in rotations:
        verts = np.roll(sol.vertices, -r)
        key = _vertex_key(verts, snap_tol)
        if best_key is None or key < best_key:
            best_key = key
            best = r
    if best == 0:
        return sol

    verts = np.roll(sol.vertices, -best)
    order = _ROTATION_PARAMS[best]
    params = tuple(sol.params[i] for i in order)
    c_new, d_new = verts[1], verts[3]
    return replace(
        sol,
        params=params,
        vertices=verts,
        theta=float(np.mod(np.angle(c_new - d_new), TWO_PI)),
        half_diag=float(abs(c_new - d_new) / 2.0),
        center=complex(verts.sum() / 4.0),
    )


def verify_rectangle(sol: RectangleSolution, tol: float) -> bool:
    """Euclidean rectangle check, independent of the residual algebra.

    The two diagonals must share a midpoint, have equal length and cross
    at the solution's aspect angle, all within tol.
    """
    v = sol.vertices
    d1 = v[0] - v[2]
    d2 = v[1] - v[3]
    if abs(d1) == 0 or abs(d2) == 0:
        return False
    mid_gap = abs((v[0] + v[2]) / 2.0 - (v[1] + v[3]) / 2.0)
    len_gap = abs(abs(d1) - abs(d2))
    delta = np.mod(np.angle(d1) - np.angle(d2), np.pi)
    acute = min(delta, np.pi - delta)
    target = min(sol.phi, np.pi - sol.phi)
    return bool(mid_gap <= tol and len_gap <= tol and abs(acute - target) <= tol)


def aspect_angle_from_ratio(p: float, q: float) -> float:
    """Diagonal crossing angle 2*atan(q/p) of a p x q rectangle (p >= q)."""
    if not (p > 0 and q > 0):
        raise NonpositiveSide(f"sides must be positive, got {p}, {q}")
    if q > p:
        raise ValueError("expected p >= q")
    return 2.0 * float(np.arctan2(q, p))
