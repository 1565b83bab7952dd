"""Seeded Gauss-Newton search for inscribed rectangles.

Pipeline: sample the curve on a parameter grid, enumerate point pairs,
bin them spatially by midpoint, match pairs of pairs whose midpoints,
lengths and line angles are compatible with the target aspect angle,
then refine each match with a damped Gauss-Newton iteration on the
four-equation residual and collapse the survivors into canonical,
deduplicated solutions.

A rank-deficient Jacobian (solution families, e.g. any rectangle in a
circle) is handled by minimum-norm steps; families are collapsed to one
representative per connected cluster at grid resolution.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .curves import Curve, evaluate
from .errors import (
    ConvergedDegenerate,
    DegenerateRectangle,
    NoSolutionFound,
    NotConverged,
)
from .profiles import AspectProfile
from .system import (
    ACCEPT_TOL_REL,
    R_MIN_REL,
    SNAP_TOL_REL,
    RectangleSolution,
    _ROTATION_PARAMS,
    canonical,
    rectangle_from_params,
    residual,
    residual_jacobian,
    wrap_angles,
)

TWO_PI = 2.0 * np.pi

# Singular values below this fraction of the largest are treated as zero
# when refine() builds its minimum-norm step.
RANK_CUTOFF = 1e-8


@dataclass(frozen=True)
class SolverConfig:
    """Tunables for the rectangle search.

    None means "derive from the curve": bin_size defaults to
    2*diameter/pair_grid, accept_tol to 1e-10*diameter, r_min to
    1e-6*diameter, snap_tol to 1e-7*diameter and dedup_tol to twice the
    parameter grid step.
    """

    pair_grid: int = 256
    bin_size: float | None = None
    angle_slack: float = 0.15
    length_slack: float = 0.1
    max_iter: int = 50
    max_step: float = 0.5
    accept_tol: float | None = None
    r_min: float | None = None
    snap_tol: float | None = None
    dedup_tol: float | None = None
    max_seeds: int = 20000

    def __post_init__(self):
        if self.pair_grid < 32:
            raise ValueError("pair_grid must be >= 32")
        if self.angle_slack <= 0 or self.length_slack <= 0:
            raise ValueError("slacks must be positive")
        if self.max_iter < 1 or self.max_step <= 0:
            raise ValueError("max_iter and max_step must be positive")

    def resolved(self, curve: Curve) -> "_Resolved":
        diam = curve.diameter
        return _Resolved(
            pair_grid=self.pair_grid,
            bin_size=self.bin_size if self.bin_size is not None else 2.0 * diam / self.pair_grid,
            angle_slack=self.angle_slack,
            length_slack=self.length_slack,
            max_iter=self.max_iter,
            max_step=self.max_step,
            accept_tol=self.accept_tol if self.accept_tol is not None else ACCEPT_TOL_REL * diam,
            r_min=self.r_min if self.r_min is not None else R_MIN_REL * diam,
            snap_tol=self.snap_tol if self.snap_tol is not None else SNAP_TOL_REL * diam,
            dedup_tol=self.dedup_tol if self.dedup_tol is not None else 2.0 * TWO_PI / self.pair_grid,
            max_seeds=self.max_seeds,
        )


@dataclass(frozen=True)
class _Resolved:
    pair_grid: int
    bin_size: float
    angle_slack: float
    length_slack: float
    max_iter: int
    max_step: float
    accept_tol: float
    r_min: float
    snap_tol: float
    dedup_tol: float
    max_seeds: int


def _circ_dist(a, b):
    """Distance on the circle of circumference 2*pi, elementwise."""
    return np.abs(np.mod(a - b + np.pi, TWO_PI) - np.pi)


# ---------------------------------------------------------------------------
# Seeding


@lru_cache(maxsize=8)
def _combo_table(curve: Curve, pair_grid: int, bin_size: float, length_slack: float):
    """Pair table plus midpoint-compatible pair combos, target angle free.

    Returns arrays describing every unordered pair of grid-point pairs
    whose midpoints agree within 2*bin_size and whose span lengths agree
    within the relative length slack.  Cached per curve/grid: the result
    does not depend on the aspect angle.
    """
    th = np.arange(pair_grid) * (TWO_PI / pair_grid)
    z = evaluate(curve, th)

    ii, jj = np.triu_indices(pair_grid, k=1)
    mid = (z[ii] + z[jj]) / 2.0
    diff = z[ii] - z[jj]
    length = np.abs(diff)
    beta = np.mod(np.angle(diff), TWO_PI)  # directed angle of z[i]-z[j]

    # Spatial hash on midpoints; 5x5 neighborhoods guarantee every combo
    # with midpoint gap <= 2*bin_size is gathered.
    cell = np.floor(mid.real / bin_size).astype(np.int64) * (1 << 24) + np.floor(
        mid.imag / bin_size
    ).astype(np.int64)
    order = np.argsort(cell, kind="stable")
    sorted_cell = cell[order]

    combo_a = []
    combo_b = []
    for dx in range(-2, 3):
        for dy in range(-2, 3):
            target = cell + dx * (1 << 24) + dy
            lo = np.searchsorted(sorted_cell, target, side="left")
            hi = np.searchsorted(sorted_cell, target, side="right")
            counts = hi - lo
            total = int(counts.sum())
            if total == 0:
                continue
            anchors = np.repeat(np.arange(cell.size), counts)
            shift = np.arange(total) - np.repeat(np.cumsum(counts) - counts, counts)
            partners = order[np.repeat(lo, counts) + shift]
            keep = anchors < partners
            combo_a.append(anchors[keep])
            combo_b.append(partners[keep])
    if combo_a:
        ca = np.concatenate(combo_a)
        cb = np.concatenate(combo_b)
    else:
        ca = np.empty(0, dtype=np.int64)
        cb = np.empty(0, dtype=np.int64)

    gap = np.abs(mid[ca] - mid[cb])
    len_ok = np.abs(length[ca] - length[cb]) <= length_slack * np.maximum(
        length[ca], length[cb]
    )
    keep = (gap <= 2.0 * bin_size) & len_ok
    ca, cb = ca[keep], cb[keep]

    # Deterministic order regardless of hash traversal.
    order = np.lexsort((cb, ca))
    ca, cb = ca[order], cb[order]

    return {
        "th": th,
        "ii": ii,
        "jj": jj,
        "mid": mid,
        "length": length,
        "beta": beta,
        "combo_a": ca,
        "combo_b": cb,
        "mid_gap": np.abs(mid[ca] - mid[cb]),
    }


def _oriented_seeds(tab, profile: AspectProfile, rc: _Resolved):
    """Angle-filter the cached combos and orient them into seed quadruples.

    Returns (seeds (m, 4), scores (m,)) where lower scores mean better
    slack margins.  Each accepted combo yields a quadruple whose first
    pair plays the rotated diagonal (A, B) and second the reference
    diagonal (C, D), oriented so arg(A-B) - arg(C-D) is near the target
    angle.
    """
    ca, cb = tab["combo_a"], tab["combo_b"]
    if ca.size == 0:
        return np.empty((0, 4)), np.empty(0)
    beta, length = tab["beta"], tab["length"]
    ii, jj, th = tab["ii"], tab["jj"], tab["th"]

    d = np.mod(beta[ca] - beta[cb], np.pi)  # line-angle difference in [0, pi)

    seeds = []
    scores = []
    base_score = tab["mid_gap"] / rc.bin_size + np.abs(
        length[ca] - length[cb]
    ) / np.maximum(length[ca], length[cb]).clip(min=1e-300) / rc.length_slack

    for first, second, dd in ((ca, cb, d), (cb, ca, np.mod(-d, np.pi))):
        # ``first`` plays (A, B); target angle comes from the reference
        # diagonal's length.
        tau = profile.value(length[second])
        miss = np.abs(dd - tau)
        miss = np.minimum(miss, np.pi - miss)  # line angles live mod pi
        ok = miss <= rc.angle_slack
        if not ok.any():
            continue
        f, sec = first[ok], second[ok]
        # Orient (C, D): flip when the directed difference is pi away.
        delta = np.mod(beta[f] - beta[sec] - tau[ok] + np.pi, TWO_PI) - np.pi
        flip = np.abs(delta) > 0.5 * np.pi
        s_c = np.where(flip, jj[sec], ii[sec])
        t_d = np.where(flip, ii[sec], jj[sec])
        quad = np.column_stack([th[ii[f]], th[jj[f]], th[s_c], th[t_d]])
        seeds.append(quad)
        scores.append(base_score[ok] + miss[ok] / rc.angle_slack)

    if not seeds:
        return np.empty((0, 4)), np.empty(0)
    return np.concatenate(seeds), np.concatenate(scores)


def seed_candidates(curve: Curve, phi: float, cfg: SolverConfig | None = None):
    """All grid seed quadruples passing the midpoint/length/angle slacks.

    Returns an (m, 4) array of torus parameters, deterministically
    ordered, without the thinning the solve pipeline applies.
    """
    cfg = cfg or SolverConfig()
    rc = cfg.resolved(curve)
    tab = _combo_table(curve, rc.pair_grid, rc.bin_size, rc.length_slack)
    seeds, _ = _oriented_seeds(tab, AspectProfile.constant(phi), rc)
    return seeds


def _thin_seeds(seeds, scores, cell: float, cap: int):
    """One best seed per 4-d parameter cell, then a stable score cap."""
    if seeds.shape[0] == 0:
        return seeds
    keys = np.floor(seeds / cell).astype(np.int64)
    # pack 4 small ints into one key; grid cells stay well below 2**15
    packed = ((keys[:, 0] * (1 << 15) + keys[:, 1]) * (1 << 15) + keys[:, 2]) * (
        1 << 15
    ) + keys[:, 3]
    order = np.lexsort((scores, packed))
    packed_sorted = packed[order]
    first = np.ones(order.size, dtype=bool)
    first[1:] = packed_sorted[1:] != packed_sorted[:-1]
    chosen = order[first]
    if chosen.size > cap:
        by_score = np.argsort(scores[chosen], kind="stable")[:cap]
        chosen = chosen[np.sort(by_score)]
    return seeds[np.sort(chosen)]


# ---------------------------------------------------------------------------
# Refinement


def _cell_best_mask(u, norm, mask, cell: float):
    """Among masked rows, keep the best-norm row per quantization cell."""
    idx = np.flatnonzero(mask)
    q = np.floor(u[idx] / cell).astype(np.int64)
    packed = ((q[:, 0] * (1 << 20) + q[:, 1]) * (1 << 20) + q[:, 2]) * (1 << 20) + q[:, 3]
    order = np.lexsort((norm[idx], packed))
    ps = packed[order]
    first = np.ones(order.size, dtype=bool)
    first[1:] = ps[1:] != ps[:-1]
    out = np.zeros(u.shape[0], dtype=bool)
    out[idx[order[first]]] = True
    return out


def _refine_batch(curve: Curve, seeds, profile: AspectProfile, rc: _Resolved):
    """Damped Gauss-Newton on a batch of seeds.

    Returns (params, norms): wrapped parameters and residual max-norms
    after at most max_iter steps.  Ridge-regularized normal equations
    give near-minimum-norm steps on rank-deficient Jacobians.  After the
    first few (quadratically convergent) iterations, iterates sharing a
    quarter-dedup-tolerance cell are collapsed to the best one, so large
    seed sets do not pay full-depth refinement per seed.
    """
    u = np.array(seeds, dtype=float)
    if u.ndim == 1:
        u = u[None, :]
    m = u.shape[0]
    res = residual(curve, u, profile)
    norm = np.abs(res).max(axis=1)
    alive = np.isfinite(norm)
    stop = 1e-2 * rc.accept_tol
    stall = np.zeros(m, dtype=np.int8)

    eye = np.eye(4)
    for it in range(rc.max_iter):
        if it in (6, 12) and alive.sum() > 256:
            alive &= _cell_best_mask(u, norm, alive, rc.dedup_tol / 4.0)
        work = alive & (norm > stop)
        if not work.any():
            break
        idx = np.flatnonzero(work)
        uw = u[idx]
        jac = residual_jacobian(curve, uw, profile)
        jt = np.swapaxes(jac, -1, -2)
        h = jt @ jac
        lam = 1e-12 * np.einsum("...ii->...", h)[..., None, None] / 4.0 + 1e-300
        g = jt @ res[idx][..., None]
        try:
            delta = -np.linalg.solve(h + lam * eye, g)[..., 0]
        except np.linalg.LinAlgError:
            delta = -np.linalg.solve(h + (lam + 1e-10) * eye, g)[..., 0]

        big = np.abs(delta).max(axis=1)
        scale = np.where(big > rc.max_step, rc.max_step / np.where(big > 0, big, 1.0), 1.0)
        delta = delta * scale[:, None]

        # Backtracking: halve the step of whichever members failed to
        # reduce the residual norm, re-evaluating only those.
        improved = np.zeros(idx.size, dtype=bool)
        pending = np.arange(idx.size)
        shrink = 1.0
        for _bt in range(5):
            trial = np.mod(uw[pending] + delta[pending] * shrink, TWO_PI)
            rtrial = residual(curve, trial, profile)
            ntrial = np.abs(rtrial).max(axis=1)
            better = np.isfinite(ntrial) & (ntrial < norm[idx[pending]])
            good = idx[pending[better]]
            u[good] = trial[better]
            norm[good] = ntrial[better]
            res[good] = rtrial[better]
            improved[pending[better]] = True
            pending = pending[~better]
            if pending.size == 0:
                break
            shrink *= 0.5

        stall[idx] = np.where(improved, 0, stall[idx] + 1)
        alive[idx] &= stall[idx] < 3

    return np.mod(u, TWO_PI), norm


def refine(
    curve: Curve,
    seed,
    profile: AspectProfile,
    cfg: SolverConfig | None = None,
) -> RectangleSolution:
    """Refine one seed to an accepted rectangle.

    Damped Gauss-Newton with an exact minimum-norm pseudoinverse step
    (singular values below 1e-8 of the largest are dropped).  Raises
    NotConverged if the residual stays above accept_tol after max_iter
    iterations and ConvergedDegenerate when the iteration collapses onto
    the zero-diagonal branch.
    """
    cfg = cfg or SolverConfig()
    rc = cfg.resolved(curve)
    u = wrap_angles(np.asarray(seed, dtype=float).reshape(4))
    res = residual(curve, u, profile)
    norm = float(np.abs(res).max())
    stop = 1e-2 * rc.accept_tol

    for _ in range(rc.max_iter):
        if norm <= stop:
            break
        jac = residual_jacobian(curve, u, profile)
        uu, sv, vt = np.linalg.svd(jac)
        inv = np.where(sv > RANK_CUTOFF * sv[0], 1.0 / np.where(sv > 0, sv, 1.0), 0.0)
        delta = -(vt.T * inv) @ (uu.T @ res)

        big = float(np.abs(delta).max())
        if big > rc.max_step:
            delta *= rc.max_step / big

        improved = False
        for _bt in range(5):
            trial = np.mod(u + delta, TWO_PI)
            rtrial = residual(curve, trial, profile)
            ntrial = float(np.abs(rtrial).max())
            if np.isfinite(ntrial) and ntrial < norm:
                u, res, norm = trial, rtrial, ntrial
                improved = True
                break
            delta = delta * 0.5
        if not improved:
            break

    if not (norm <= rc.accept_tol):
        raise NotConverged(f"residual norm {norm:g} above {rc.accept_tol:g}")
    try:
        return rectangle_from_params(
            curve, u, profile, accept_tol=rc.accept_tol, r_min=rc.r_min
        )
    except DegenerateRectangle as exc:
        raise ConvergedDegenerate(str(exc)) from exc


# ---------------------------------------------------------------------------
# Clustering and deduplication


def params_distance(u, v) -> float:
    """Torus distance between parameter quadruples modulo relabeling."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    best = np.inf
    for perm in _ROTATION_PARAMS.values():
        d = _circ_dist(u, v[list(perm)]).max()
        best = min(best, float(d))
    return best


def params_distance_many(u, pts):
    """Torus distance (mod relabeling) from one quadruple to many rows."""
    u = np.asarray(u, dtype=float).reshape(4)
    pts = np.asarray(pts, dtype=float).reshape(-1, 4)
    best = np.full(pts.shape[0], np.inf)
    for perm in _ROTATION_PARAMS.values():
        d = _circ_dist(u[None, :], pts[:, list(perm)]).max(axis=1)
        best = np.minimum(best, d)
    return best


def cluster_params(params, tol: float):
    """Connected-component labels for quadruples at torus distance <= tol.

    Distance is taken modulo the solution relabeling orbit, so the two
    parametrizations of one rectangle always share a label.  Scales to
    large inputs by union-find over shifted quantization grids: any two
    quadruples within tol per coordinate share a cell in at least one of
    the 16 half-cell-shifted grids, so no pair at distance <= tol is
    ever split (cells may merge points up to one cell apart, i.e. the
    effective radius is between tol and ~2 tol).
    """
    pts = np.mod(np.asarray(params, dtype=float).reshape(-1, 4), TWO_PI)
    m = pts.shape[0]
    if m == 0:
        return np.empty(0, dtype=int)
    # cells per dimension: an exact divisor of the circle so the wrap
    # seam is an ordinary cell boundary; cell width >= 2 tol
    k_dim = max(1, int(np.floor(np.pi / tol)))
    cell = TWO_PI / k_dim

    parent = np.arange(m)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    keys = []
    half = cell / 2.0
    shifts = [
        np.array([a, b, c_, d]) * half
        for a in (0, 1)
        for b in (0, 1)
        for c_ in (0, 1)
        for d in (0, 1)
    ]
    for perm in _ROTATION_PARAMS.values():
        w = pts[:, list(perm)]
        for sh in shifts:
            q = (np.floor(np.mod(w + sh, TWO_PI) / cell).astype(np.int64)) % k_dim
            keys.append(((q[:, 0] * k_dim + q[:, 1]) * k_dim + q[:, 2]) * k_dim + q[:, 3])
    key = np.concatenate(keys)
    ids = np.tile(np.arange(m), len(keys))
    uniq = np.unique(key * m + ids)
    key, ids = uniq // m, uniq % m

    order = np.argsort(key, kind="stable")
    ks, is_ = key[order], ids[order]
    same = np.flatnonzero(ks[1:] == ks[:-1])
    for pos in same:
        a, b = find(int(is_[pos])), find(int(is_[pos + 1]))
        if a != b:
            parent[max(a, b)] = min(a, b)

    roots = np.fromiter((find(i) for i in range(m)), dtype=np.int64, count=m)
    _, labels = np.unique(roots, return_inverse=True)
    return labels


def _collapse_roots(curve: Curve, params, norms, profile: AspectProfile, rc: _Resolved):
    """Collapse refined roots to one representative per solution component.

    Two-stage: first, roots sharing a quarter-dedup-tolerance cell merge
    outright (they refined to the same point up to solver noise).  Then
    candidate pairs of surviving representatives within the dedup
    tolerance are joined only if the root set is actually continuous
    between them, tested by refining the geodesic midpoint: on a
    one-parameter family the midpoint converges to a root strictly
    between the endpoints, while between two nearby discrete roots it
    falls back onto an endpoint.  This collapses symmetric curves'
    solution families without fusing distinct rectangles that happen to
    pass close to each other near a branch merge.
    """
    cell = rc.dedup_tol / 4.0
    quant = np.floor(params / cell).astype(np.int64)
    packed = ((quant[:, 0] * (1 << 20) + quant[:, 1]) * (1 << 20) + quant[:, 2]) * (
        1 << 20
    ) + quant[:, 3]
    order = np.lexsort((norms, packed))
    packed_sorted = packed[order]
    first = np.ones(order.size, dtype=bool)
    first[1:] = packed_sorted[1:] != packed_sorted[:-1]
    keep = np.sort(order[first])
    params = params[keep]
    norms = norms[keep]
    m = params.shape[0]
    if m == 1:
        return params, norms

    # Candidate edges: pairs within dedup_tol under some relabeling.
    perms = list(_ROTATION_PARAMS.values())
    dmat = np.full((m, m), np.inf)
    pmat = np.zeros((m, m), dtype=np.int8)
    for pk, perm in enumerate(perms):
        w = params[:, list(perm)]
        d = _circ_dist(params[:, None, :], w[None, :, :]).max(axis=2)
        better = d < dmat
        dmat = np.where(better, d, dmat)
        pmat = np.where(better, pk, pmat)
    ei, ej = np.nonzero(np.triu(dmat <= rc.dedup_tol, k=1))

    parent = np.arange(m)

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    if ei.size:
        # Same-cell-tier merges (distance below the coarse cell) need no
        # continuity proof; everything else gets the midpoint test.
        trivial = dmat[ei, ej] <= cell
        ti, tj = ei[trivial], ej[trivial]
        qi, qj = ei[~trivial], ej[~trivial]
        if qi.size:
            vperm = np.array(perms)[pmat[qi, qj]]
            vv = np.take_along_axis(params[qj], vperm, axis=1)
            gap = np.mod(vv - params[qi] + np.pi, TWO_PI) - np.pi
            mids = np.mod(params[qi] + 0.5 * gap, TWO_PI)
            mp, mn = _refine_batch(curve, mids, profile, rc)
            d_u = _circ_dist(mp, params[qi]).max(axis=1)
            d_v = _circ_dist(mp, vv).max(axis=1)
            lim = 0.75 * dmat[qi, qj]
            good = (mn <= rc.accept_tol) & (d_u <= lim) & (d_v <= lim)
            qi, qj = qi[good], qj[good]
        for a, b in zip(np.concatenate([ti, qi]), np.concatenate([tj, qj])):
            ra, rb = find(int(a)), find(int(b))
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

    roots = np.fromiter((find(i) for i in range(m)), dtype=np.int64, count=m)
    reps = []
    for lab in np.unique(roots):
        members = np.flatnonzero(roots == lab)
        order = np.lexsort(tuple(params[members].T[::-1]) + (norms[members],))
        reps.append(members[order[0]])
    reps = np.array(sorted(reps))
    return params[reps], norms[reps]


# ---------------------------------------------------------------------------
# Top-level solves


def _find_roots(curve, profile, rc: _Resolved, extra_seeds=None):
    tab = _combo_table(curve, rc.pair_grid, rc.bin_size, rc.length_slack)
    seeds, scores = _oriented_seeds(tab, profile, rc)
    seeds = _thin_seeds(seeds, scores, TWO_PI / rc.pair_grid, rc.max_seeds)
    if extra_seeds is not None and len(extra_seeds):
        extra = np.asarray(extra_seeds, dtype=float).reshape(-1, 4)
        seeds = np.concatenate([seeds, extra]) if seeds.size else extra
    if seeds.shape[0] == 0:
        raise NoSolutionFound("no seed candidates at this grid and slack")

    params, norms = _refine_batch(curve, seeds, profile, rc)
    ok = norms <= rc.accept_tol
    if ok.any():
        pts = evaluate(curve, params[ok])
        half = np.abs(pts[:, 2] - pts[:, 3]) / 2.0
        ok_idx = np.flatnonzero(ok)[half >= rc.r_min]
    else:
        ok_idx = np.empty(0, dtype=int)
    if ok_idx.size == 0:
        raise NoSolutionFound("no seed refined to a nondegenerate rectangle")
    return _collapse_roots(curve, params[ok_idx], norms[ok_idx], profile, rc)


def _assemble(curve, profile, params, rc: _Resolved):
    sols = []
    for u in params:
        try:
            sol = rectangle_from_params(
                curve, u, profile, accept_tol=rc.accept_tol, r_min=rc.r_min
            )
        except (NotConverged, DegenerateRectangle):
            continue
        sols.append(canonical(sol, snap_tol=rc.snap_tol))
    sols.sort(key=lambda s: (s.half_diag, tuple(s.vertices.view(float))))
    return sols


def solve_porism(
    curve: Curve, profile: AspectProfile, cfg: SolverConfig | None = None
) -> list[RectangleSolution]:
    """All rectangles whose diagonal angle matches the profile at their
    own diagonal length.  Constant profiles reduce to solve_all."""
    cfg = cfg or SolverConfig()
    rc = cfg.resolved(curve)
    profile.check_domain(0.0, curve.diameter * 1.01)
    params, _ = _find_roots(curve, profile, rc)
    sols = _assemble(curve, profile, params, rc)
    if not sols:
        raise NoSolutionFound("all refined roots were rejected")
    return sols


def solve_all(
    curve: Curve, phi: float, cfg: SolverConfig | None = None
) -> list[RectangleSolution]:
    """All rectangles with diagonal crossing angle phi, sorted by size.

    Raises NoSolutionFound when no seed refines; the caller may retry
    with a doubled pair_grid (see solve_all_retry).
    """
    if not (0.0 < phi <= 0.5 * np.pi + 1e-12):
        raise ValueError("phi must lie in (0, pi/2]")
    return solve_porism(curve, AspectProfile.constant(phi), cfg)


def solve_all_retry(
    curve: Curve, phi_or_profile, cfg: SolverConfig | None = None
) -> tuple[list[RectangleSolution], list[str]]:
    """solve_all / solve_porism with one automatic pair_grid doubling."""
    cfg = cfg or SolverConfig()
    if isinstance(phi_or_profile, AspectProfile):
        run = lambda c: solve_porism(curve, phi_or_profile, c)  # noqa: E731
    else:
        run = lambda c: solve_all(curve, float(phi_or_profile), c)  # noqa: E731
    try:
        return run(cfg), []
    except NoSolutionFound:
        doubled = replace(cfg, pair_grid=2 * cfg.pair_grid)
        sols = run(doubled)
        return sols, [f"retried with pair_grid={doubled.pair_grid}"]


@dataclass(frozen=True)
class SweepResult:
    phis: list[float]
    entries: list[list[RectangleSolution]]
    links: list[list[tuple[int, int]]]
    warnings: list[str] = field(default_factory=list)


def sweep(
    curve: Curve,
    phi_lo: float,
    phi_hi: float,
    steps: int,
    cfg: SolverConfig | None = None,
) -> SweepResult:
    """Continuation sweep over aspect angles.

    Each step runs the full grid solve plus refinement of the previous
    step's roots as extra seeds; entries that stay empty after one grid
    doubling are flagged in warnings.  Links join solutions of adjacent
    steps whose parameters agree within 10 times the phi step.
    """
    if steps < 2:
        raise ValueError("steps must be >= 2")
    if not (0 < phi_lo < phi_hi <= 0.5 * np.pi):
        raise ValueError("need 0 < phi_lo < phi_hi <= pi/2")
    cfg = cfg or SolverConfig()

    phis = [float(p) for p in np.linspace(phi_lo, phi_hi, steps)]
    branch_tol = 10.0 * ((phi_hi - phi_lo) / (steps - 1))

    entries: list[list[RectangleSolution]] = []
    warnings: list[str] = []
    prev_params = None
    for k, phi in enumerate(phis):
        profile = AspectProfile.constant(phi)
        sols: list[RectangleSolution] = []
        for attempt, c in enumerate((cfg, replace(cfg, pair_grid=2 * cfg.pair_grid))):
            try:
                params, _ = _find_roots(curve, profile, c.resolved(curve), prev_params)
                sols = _assemble(curve, profile, params, c.resolved(curve))
                if sols:
                    if attempt:
                        warnings.append(f"step {k}: retried with doubled pair_grid")
                    break
            except NoSolutionFound:
                continue
        if not sols:
            warnings.append(f"step {k}: no solutions at phi={phi:g}")
        entries.append(sols)
        prev_params = np.array([s.params for s in sols]) if sols else None

    links: list[list[tuple[int, int]]] = []
    for k in range(len(entries) - 1):
        step_links = []
        for i, a in enumerate(entries[k]):
            for j, b in enumerate(entries[k + 1]):
                if params_distance(a.params, b.params) <= branch_tol:
                    step_links.append((i, j))
        links.append(step_links)

    return SweepResult(phis=phis, entries=entries, links=links, warnings=warnings)


# ---------------------------------------------------------------------------
# Brute-force oracle


@dataclass(frozen=True)
class OracleHit:
    """One unrefined brute-force hit: a grid quadruple passing the
    midpoint/length/angle tests."""

    params: tuple[float, float, float, float]
    vertices: np.ndarray  # complex (4,), cyclic order as in RectangleSolution

    @property
    def center(self) -> complex:
        return complex(self.vertices.sum() / 4.0)


def oracle_solve(
    curve: Curve, phi: float, grid: int = 256, slack: float = 0.05
) -> list[OracleHit]:
    """Exhaustive pair-of-pairs enumeration, no refinement.

    A combo passes when the two midpoints and span lengths agree within
    slack * diameter / 2 and the acute angle between the two lines is
    within slack radians of phi.  Independent of the seeded solver: a
    plain sorted-window scan over all pair combinations.
    """
    if not (0 < phi <= 0.5 * np.pi):
        raise ValueError("phi must lie in (0, pi/2]")
    if grid < 64:
        raise ValueError("grid must be >= 64")
    th = np.arange(grid) * (TWO_PI / grid)
    z = evaluate(curve, th)
    diam = curve.diameter
    window = slack * diam / 2.0

    ii, jj = np.triu_indices(grid, k=1)
    mid = (z[ii] + z[jj]) / 2.0
    diff = z[ii] - z[jj]
    length = np.abs(diff)
    beta = np.angle(diff)

    order = np.argsort(mid.real, kind="stable")
    mid_s, len_s, beta_s = mid[order], length[order], beta[order]
    ii_s, jj_s = ii[order], jj[order]
    mx = mid_s.real

    hits: list[tuple[int, int]] = []
    npairs = mx.size
    chunk = 2048
    for lo in range(0, npairs, chunk):
        hi = min(lo + chunk, npairs)
        right = np.searchsorted(mx, mx[hi - 1] + window, side="right")
        span = np.arange(lo, right)
        a = np.arange(lo, hi)
        dm = np.abs(mid_s[a][:, None] - mid_s[span][None, :])
        dl = np.abs(len_s[a][:, None] - len_s[span][None, :])
        dang = np.mod(beta_s[a][:, None] - beta_s[span][None, :], np.pi)
        acute = np.minimum(dang, np.pi - dang)
        ok = (
            (dm <= window)
            & (dl <= window)
            & (np.abs(acute - phi) <= slack)
            & (span[None, :] > a[:, None])
        )
        for r, c in zip(*np.nonzero(ok)):
            hits.append((int(a[r]), int(span[c])))

    out = []
    for p, q in hits:
        d = np.mod(beta_s[p] - beta_s[q], np.pi)
        if abs(d - phi) <= slack:
            first, second = p, q
        else:
            first, second = q, p
        delta = np.mod(beta_s[first] - beta_s[second] - phi + np.pi, TWO_PI) - np.pi
        if abs(delta) > 0.5 * np.pi:
            sc, td = jj_s[second], ii_s[second]
        else:
            sc, td = ii_s[second], jj_s[second]
        quad = (
            float(th[ii_s[first]]),
            float(th[jj_s[first]]),
            float(th[sc]),
            float(th[td]),
        )
        verts = np.array([z[ii_s[first]], z[sc], z[jj_s[first]], z[td]])
        out.append(OracleHit(params=quad, vertices=verts))

    out.sort(key=lambda h: h.params)
    return out
