"""Closed plane curves as truncated complex Fourier series.

A curve is stored as coefficients ``c[k]`` for ``k = -n..n`` and evaluated as
``gamma(s) = sum_k c[k] * exp(i k s)`` with the parameter ``s`` running over
``[0, 2*pi)``.  Points in the plane are complex numbers throughout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .errors import (
    DegenerateInput,
    DegenerateTangent,
    TooFewPoints,
    UnknownPreset,
)

TWO_PI = 2.0 * np.pi

# Relative threshold on |gamma'|; a curve counts as immersed only when the
# sampled minimum speed stays above IMMERSION_EPS_REL * diameter.
IMMERSION_EPS_REL = 1e-6

# Absolute floor on total polygon length accepted by fit_from_points.
LENGTH_EPS = 1e-9


@dataclass(frozen=True, eq=False)
class Curve:
    """Truncated Fourier representation of a closed plane curve."""

    coeffs: np.ndarray  # complex, shape (2n+1,), index j holds k = j - n

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise ValueError("coeffs must be a 1-d array of odd length")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def n(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        if abs(k) > self.n:
            return 0.0 + 0.0j
        return complex(self.coeffs[self.n + k])

    @cached_property
    def _deriv_coeffs(self) -> np.ndarray:
        ks = np.arange(-self.n, self.n + 1)
        return 1j * ks * self.coeffs

    @cached_property
    def diameter(self) -> float:
        """Max pairwise distance over a dense sample of the curve."""
        z = evaluate(self, np.arange(256) * (TWO_PI / 256))
        d = np.abs(z[:, None] - z[None, :])
        return float(d.max())


def _basis(s, n):
    """Matrix of exp(i k s) for k = -n..n, built by power chaining."""
    s = np.asarray(s, dtype=float)
    w = np.exp(1j * s)
    out = np.empty(s.shape + (2 * n + 1,), dtype=complex)
    out[..., n] = 1.0
    cur = np.ones_like(w)
    for k in range(1, n + 1):
        cur = cur * w
        out[..., n + k] = cur
        out[..., n - k] = np.conj(cur)
    return out


def evaluate(curve: Curve, s):
    """Evaluate gamma(s); s may be a scalar or an array."""
    out = _basis(s, curve.n) @ curve.coeffs
    if np.isscalar(s) or np.ndim(s) == 0:
        return complex(out)
    return out


def derivative(curve: Curve, s):
    """Evaluate gamma'(s); s may be a scalar or an array."""
    out = _basis(s, curve.n) @ curve._deriv_coeffs
    if np.isscalar(s) or np.ndim(s) == 0:
        return complex(out)
    return out


def tangent(curve: Curve, s) -> complex:
    """Unit tangent at s.  Raises DegenerateTangent when |gamma'| ~ 0."""
    v = derivative(curve, s)
    speed = np.abs(v)
    eps = IMMERSION_EPS_REL * curve.diameter
    if np.any(speed <= eps):
        raise DegenerateTangent(f"tangent speed {np.min(speed):g} below {eps:g}")
    return v / speed


@dataclass(frozen=True)
class CurveValidityReport:
    is_immersed: bool
    min_speed: float
    is_simple: bool
    first_crossing: tuple[float, float] | None = None

    @property
    def ok(self) -> bool:
        return self.is_immersed and self.is_simple


def fit_from_points(points, cutoff: int = 12) -> Curve:
    """Fit a band-limited curve through a closed polygon of points.

    The polygon (first point != last; closure implied) is resampled
    uniformly by arclength to max(256, 8*cutoff) points and the Fourier
    coefficients with |k| <= cutoff are taken from the DFT of that
    resampled sequence.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise TooFewPoints("points must be an (m, 2) array")
    z = pts[:, 0] + 1j * pts[:, 1]
    if z.size >= 2 and z[0] == z[-1]:
        z = z[:-1]  # drop an explicitly repeated closing point
    m = z.size
    if m < 16:
        raise TooFewPoints(f"need at least 16 points, got {m}")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")

    seg = np.roll(z, -1) - z
    seglen = np.abs(seg)
    total = float(seglen.sum())
    if total < LENGTH_EPS:
        raise DegenerateInput(f"polygon length {total:g} below {LENGTH_EPS:g}")

    n_samples = max(256, 8 * cutoff)
    cum = np.concatenate(([0.0], np.cumsum(seglen)))
    targets = np.arange(n_samples) * (total / n_samples)
    idx = np.clip(np.searchsorted(cum, targets, side="right") - 1, 0, m - 1)
    denom = np.where(seglen[idx] > 0, seglen[idx], 1.0)
    frac = (targets - cum[idx]) / denom
    samples = z[idx] + frac * seg[idx]

    spectrum = np.fft.fft(samples) / n_samples
    coeffs = np.empty(2 * cutoff + 1, dtype=complex)
    for k in range(-cutoff, cutoff + 1):
        coeffs[cutoff + k] = spectrum[k % n_samples]
    return Curve(coeffs)


def fit_deviation(points, curve: Curve) -> float:
    """Max distance from the input points to their nearest curve sample.

    Reported for diagnostics; smooth dense input stays close, a coarse or
    jagged polygon may not.
    """
    pts = np.asarray(points, dtype=float)
    z = pts[:, 0] + 1j * pts[:, 1]
    dense = evaluate(curve, np.arange(2048) * (TWO_PI / 2048))
    d = np.abs(z[:, None] - dense[None, :]).min(axis=1)
    return float(d.max())


def _segments_cross(p1, p2, p3, p4):
    """Vectorized proper/improper segment intersection test.

    All arguments are complex arrays of equal shape; returns a boolean
    array.  Exact sign tests, no epsilon.
    """

    def cross(o, a, b):
        return (a.real - o.real) * (b.imag - o.imag) - (a.imag - o.imag) * (b.real - o.real)

    d1 = cross(p3, p4, p1)
    d2 = cross(p3, p4, p2)
    d3 = cross(p1, p2, p3)
    d4 = cross(p1, p2, p4)

    proper = ((d1 > 0) & (d2 < 0) | (d1 < 0) & (d2 > 0)) & (
        (d3 > 0) & (d4 < 0) | (d3 < 0) & (d4 > 0)
    )

    def on_seg(a, b, p):
        return (
            (np.minimum(a.real, b.real) <= p.real)
            & (p.real <= np.maximum(a.real, b.real))
            & (np.minimum(a.imag, b.imag) <= p.imag)
            & (p.imag <= np.maximum(a.imag, b.imag))
        )

    touch = (
        ((d1 == 0) & on_seg(p3, p4, p1))
        | ((d2 == 0) & on_seg(p3, p4, p2))
        | ((d3 == 0) & on_seg(p1, p2, p3))
        | ((d4 == 0) & on_seg(p1, p2, p4))
    )
    return proper | touch


def validate(curve: Curve, samples: int = 1024) -> CurveValidityReport:
    """Check immersion (min sampled speed) and simplicity (no crossings).

    Simplicity is tested exactly on the sampled polygon; segment pairs
    sharing an endpoint (cyclically adjacent) are exempt.
    """
    s = np.arange(samples) * (TWO_PI / samples)
    z = evaluate(curve, s)
    speed = np.abs(derivative(curve, s))
    min_speed = float(speed.min())
    is_immersed = min_speed > IMMERSION_EPS_REL * curve.diameter

    z_next = np.roll(z, -1)
    ii, jj = np.triu_indices(samples, k=2)
    keep = ~((ii == 0) & (jj == samples - 1))  # cyclic adjacency
    ii, jj = ii[keep], jj[keep]

    first: tuple[float, float] | None = None
    block = 1 << 18
    for lo in range(0, ii.size, block):
        bi = ii[lo : lo + block]
        bj = jj[lo : lo + block]
        hits = _segments_cross(z[bi], z_next[bi], z[bj], z_next[bj])
        if hits.any():
            where = np.flatnonzero(hits)
            order = np.lexsort((bj[where], bi[where]))
            hi, hj = int(bi[where[order[0]]]), int(bj[where[order[0]]])
            first = (float(s[hi]), float(s[hj]))
            break

    return CurveValidityReport(
        is_immersed=is_immersed,
        min_speed=min_speed,
        is_simple=first is None,
        first_crossing=first,
    )


def rotated(curve: Curve, angle: float) -> Curve:
    """The curve rotated about the origin by ``angle`` radians."""
    return Curve(curve.coeffs * np.exp(1j * angle))


def translated(curve: Curve, offset: complex) -> Curve:
    coeffs = curve.coeffs.copy()
    coeffs[curve.n] += offset
    return Curve(coeffs)


# ---------------------------------------------------------------------------
# Presets


def _circle() -> Curve:
    return Curve(np.array([0.0, 0.0, 1.0], dtype=complex))


def _ellipse(a: float = 2.0, b: float = 1.0) -> Curve:
    # x = a cos s, y = b sin s  ->  c1 = (a+b)/2, c-1 = (a-b)/2
    return Curve(np.array([(a - b) / 2.0, 0.0, (a + b) / 2.0], dtype=complex))


def _rounded_rectangle_points(a, b, r, m=1024):
    """Walk the boundary (straight sides + quarter-circle corners) at
    uniform arclength, counterclockwise from the right side's midpoint."""
    straights = [2 * (b - r), 2 * (a - r), 2 * (b - r), 2 * (a - r)]
    arc = 0.5 * np.pi * r
    total = sum(straights) + 4 * arc

    # Piecewise description starting at (a, -(b-r)) going up.
    pieces = []
    corners = [(a - r, b - r), (-(a - r), b - r), (-(a - r), -(b - r)), (a - r, -(b - r))]
    dirs = [1j, -1.0, -1j, 1.0]  # travel directions along the four sides
    starts = [a - 1j * (b - r), (a - r) + 1j * b, -a + 1j * (b - r), -(a - r) - 1j * b]
    for i in range(4):
        pieces.append(("line", starts[i], dirs[i], straights[i]))
        cx, cy = corners[i]
        ang0 = i * 0.5 * np.pi
        pieces.append(("arc", complex(cx, cy), ang0, arc))

    t = np.arange(m) * (total / m)
    pts = np.empty(m, dtype=complex)
    offset = 0.0
    for kind, p0, aux, length in pieces:
        mask = (t >= offset) & (t < offset + length)
        local = t[mask] - offset
        if kind == "line":
            pts[mask] = p0 + aux * local
        else:
            ang = aux + local / r
            pts[mask] = p0 + r * np.exp(1j * ang)
        offset += length
    return np.column_stack([pts.real, pts.imag])


def _rounded_rectangle(a: float = 2.0, b: float = 1.2, corner: float = 0.4) -> Curve:
    if not (0 < corner < min(a, b)):
        raise ValueError("corner radius must be in (0, min(a, b))")
    return fit_from_points(_rounded_rectangle_points(a, b, corner), cutoff=16)


def _perturbed_circle(seed: float = 1) -> Curve:
    """Unit circle plus small seeded higher harmonics.

    The perturbation amplitude is halved (up to three times) until the
    curve passes validate(), so every seed yields a usable curve.
    """
    seed = int(seed)
    rng = np.random.default_rng(seed)
    ks = [-5, -4, -3, -2, -1, 0, 2, 3, 4, 5, 6]
    draws = {k: complex(rng.standard_normal(), rng.standard_normal()) for k in ks}
    amp = 0.12
    for _ in range(4):
        coeffs = np.zeros(13, dtype=complex)  # n = 6
        coeffs[6 + 1] = 1.0
        for k in ks:
            coeffs[6 + k] = amp * draws[k] / (1.0 + (k - 1) ** 2)
        curve = Curve(coeffs)
        if validate(curve, samples=512).ok:
            return curve
        amp *= 0.5
    return curve


def _bean() -> Curve:
    # r(s) = 1 + 0.22 cos s + 0.08 sin s traced as r(s) e^{is}
    return Curve(np.array([0.0, 0.0, 0.11 + 0.04j, 1.0, 0.11 - 0.04j], dtype=complex))


_PRESETS = {
    "circle": (_circle, ()),
    "ellipse": (_ellipse, (2.0, 1.0)),
    "rounded-rectangle": (_rounded_rectangle, (2.0, 1.2, 0.4)),
    "perturbed-circle": (_perturbed_circle, (1,)),
    "bean": (_bean, ()),
}

_PRESET_RE = re.compile(r"^([a-z][a-z-]*)(?:\(([^()]*)\))?$")


@lru_cache(maxsize=64)
def _preset_cached(name: str) -> Curve:
    m = _PRESET_RE.match(name.strip())
    if not m:
        raise UnknownPreset(name)
    base, argstr = m.group(1), m.group(2)
    if base not in _PRESETS:
        raise UnknownPreset(base)
    fn, _defaults = _PRESETS[base]
    args = ()
    if argstr is not None and argstr.strip():
        try:
            args = tuple(float(a) for a in argstr.split(","))
        except ValueError as exc:
            raise UnknownPreset(name) from exc
    try:
        return fn(*args)
    except TypeError as exc:
        raise UnknownPreset(name) from exc


def preset(name: str) -> Curve:
    """Build a named preset curve, e.g. 'circle' or 'ellipse(2,1)'."""
    return _preset_cached(name)


def preset_names() -> list[str]:
    return list(_PRESETS)


#: Curve names exercised by the full verification suites.
CORPUS = (
    "circle",
    "ellipse(2,1)",
    "rounded-rectangle",
    "perturbed-circle(1)",
    "perturbed-circle(2)",
)
