"""Seeding, refinement, dedup, sweeps, and the brute-force oracle."""

import numpy as np
import pytest

from _oracles import ellipse_rectangle, ellipse_rectangle_tall, match_vertex_sets
from inscribed import wire
from inscribed.curves import preset, rotated
from inscribed.errors import ConvergedDegenerate, NoSolutionFound
from inscribed.profiles import AspectProfile
from inscribed.solver import (
    SolverConfig,
    cluster_params,
    oracle_solve,
    params_distance,
    params_distance_many,
    refine,
    seed_candidates,
    solve_all,
    solve_all_retry,
    solve_porism,
    sweep,
)
from inscribed.system import verify_rectangle

TWO_PI = 2.0 * np.pi
CIRCLE_SQUARE = np.array([0.0, np.pi, 1.5 * np.pi, 0.5 * np.pi])


# -- refinement --------------------------------------------------------


def test_refine_recovers_circle_square_from_perturbed_seed():
    c = preset("circle")
    rng = np.random.default_rng(31)
    prof = AspectProfile.constant(np.pi / 2)
    for _ in range(5):
        seed = CIRCLE_SQUARE + rng.uniform(-0.05, 0.05, 4)
        sol = refine(c, seed, prof)
        assert sol.residual_norm < 1e-12
        assert abs(sol.center) < 1e-10
        assert sol.half_diag == pytest.approx(1.0, abs=1e-10)


def test_refine_flags_the_degenerate_branch():
    # seeds with both pairs nearly collapsed slide into s=t=s2=t2
    c = preset("circle")
    with pytest.raises(ConvergedDegenerate):
        refine(c, np.array([0.3, 0.31, 0.305, 0.3]), AspectProfile.constant(np.pi / 2))


def test_refine_matches_ellipse_closed_form():
    c = preset("ellipse(2,1)")
    want_params, want_vertices = ellipse_rectangle(2.0, 1.0, np.pi / 3)
    seed = want_params + np.array([0.02, -0.015, 0.01, 0.02])
    sol = refine(c, seed, AspectProfile.constant(np.pi / 3))
    assert params_distance(sol.params, want_params) < 1e-9
    assert match_vertex_sets(sol.vertices, want_vertices, 1e-9)


# -- seeding -----------------------------------------------------------


def test_seeds_near_circle_square():
    c = preset("circle")
    seeds = seed_candidates(c, np.pi / 2)
    assert seeds.shape[0] > 0
    d = params_distance_many(CIRCLE_SQUARE, seeds)
    assert d.min() < 4 * (TWO_PI / 256)


def test_seeds_near_ellipse_closed_form():
    c = preset("ellipse(2,1)")
    want_params, _ = ellipse_rectangle(2.0, 1.0, np.pi / 3)
    seeds = seed_candidates(c, np.pi / 3)
    d = params_distance_many(want_params, seeds)
    assert d.min() < 4 * (TWO_PI / 256)


def test_config_rejects_nonpositive_slack():
    with pytest.raises(ValueError):
        SolverConfig(angle_slack=0.0)
    with pytest.raises(ValueError):
        SolverConfig(length_slack=-0.1)
    with pytest.raises(ValueError):
        SolverConfig(pair_grid=16)


# -- solve_all ---------------------------------------------------------


def test_solve_circle_square():
    c = preset("circle")
    sols = solve_all(c, np.pi / 2)
    assert len(sols) == 1  # the whole family collapses to one representative
    s = sols[0]
    assert abs(s.center) < 1e-8
    assert s.half_diag == pytest.approx(1.0, abs=1e-8)
    assert verify_rectangle(s, 1e-8)


def test_solve_ellipse_contains_closed_form():
    c = preset("ellipse(2,1)")
    sols = solve_all(c, np.pi / 3)
    assert len(sols) == 2  # wide and tall families
    _, want_wide = ellipse_rectangle(2.0, 1.0, np.pi / 3)
    _, want_tall = ellipse_rectangle_tall(2.0, 1.0, np.pi / 3)
    assert any(match_vertex_sets(s.vertices, want_wide, 1e-8) for s in sols)
    assert any(match_vertex_sets(s.vertices, want_tall, 1e-8) for s in sols)


def test_solve_ellipse_square_single_family():
    c = preset("ellipse(2,1)")
    sols = solve_all(c, np.pi / 2)
    assert len(sols) == 1
    # half-diagonal of the inscribed square: p = q gives
    # a cos u = b sin u, so the corner is (ab/hypot, ab/hypot) scaled
    u = np.arctan(2.0)
    want = np.hypot(2 * np.cos(u), np.sin(u))
    assert sols[0].half_diag == pytest.approx(want, abs=1e-9)


def test_solve_rejects_bad_phi():
    c = preset("circle")
    with pytest.raises(ValueError):
        solve_all(c, 0.0)
    with pytest.raises(ValueError):
        solve_all(c, 0.5 * np.pi + 0.01)


def test_solutions_sorted_by_half_diag():
    sols = solve_all(preset("ellipse(2,1)"), np.pi / 3)
    halves = [s.half_diag for s in sols]
    assert halves == sorted(halves)


def test_solve_deterministic_reruns():
    c = preset("perturbed-circle(1)")
    a = solve_all(c, 1.0)
    b = solve_all(c, 1.0)
    ra = [wire.solution_to_record(s) for s in a]
    rb = [wire.solution_to_record(s) for s in b]
    assert wire.canonical_dumps(ra) == wire.canonical_dumps(rb)


def test_retry_surfaces_failure():
    c = preset("circle")
    with pytest.raises(NoSolutionFound):
        solve_all_retry(c, np.pi / 2, SolverConfig(r_min=100.0))


def test_retry_reports_no_warnings_on_clean_success():
    sols, warnings = solve_all_retry(preset("circle"), np.pi / 2)
    assert len(sols) == 1
    assert warnings == []


# -- porism ------------------------------------------------------------


def test_porism_constant_profile_reduces_to_fixed_angle():
    c = preset("circle")
    prof = AspectProfile.constant(np.pi / 2)
    a = solve_porism(c, prof)
    b = solve_all(c, np.pi / 2)
    ra = [wire.solution_to_record(s) for s in a]
    rb = [wire.solution_to_record(s) for s in b]
    assert wire.canonical_dumps(ra) == wire.canonical_dumps(rb)


def test_porism_circle_ramp():
    # every circle rectangle has diagonal 2, so the ramp pins the angle
    c = preset("circle")
    ramp = AspectProfile.polynomial([np.pi / 4, 1 / 8])
    sols = solve_porism(c, ramp)
    assert len(sols) >= 1
    for s in sols:
        assert s.half_diag == pytest.approx(1.0, abs=1e-8)
        assert s.phi == pytest.approx(np.pi / 4 + 0.25, abs=1e-8)


def test_porism_profile_domain_checked():
    c = preset("ellipse(2,1)")
    steep = AspectProfile.polynomial([np.pi / 2, 1.0])  # exceeds pi within diameter
    from inscribed.errors import ProfileOutOfRange

    with pytest.raises(ProfileOutOfRange):
        solve_porism(c, steep)


# -- sweep -------------------------------------------------------------


def test_sweep_two_steps_equals_independent_solves():
    c = preset("ellipse(2,1)")
    res = sweep(c, 1.0, 1.3, 2)
    for phi, entry in zip(res.phis, res.entries):
        direct = solve_all(c, phi)
        got = wire.canonical_dumps([wire.solution_to_record(s) for s in entry])
        want = wire.canonical_dumps([wire.solution_to_record(s) for s in direct])
        assert got == want


def test_sweep_circle_branch():
    c = preset("circle")
    res = sweep(c, np.pi / 6, np.pi / 2, 10)
    assert res.warnings == []
    for entry in res.entries:
        assert len(entry) >= 1
        for s in entry:
            assert s.half_diag == pytest.approx(1.0, abs=1e-8)
    # the branch stays connected step to step
    for step_links in res.links:
        assert len(step_links) >= 1


def test_sweep_ellipse_wide_branch_matches_closed_form():
    c = preset("ellipse(2,1)")
    res = sweep(c, np.pi / 6, np.pi / 2, 20)
    assert res.warnings == []
    for phi, entry in zip(res.phis, res.entries):
        _, want = ellipse_rectangle(2.0, 1.0, phi)
        assert any(match_vertex_sets(s.vertices, want, 1e-8) for s in entry), phi


def test_sweep_validates_arguments():
    c = preset("circle")
    with pytest.raises(ValueError):
        sweep(c, 1.0, 1.2, 1)
    with pytest.raises(ValueError):
        sweep(c, 1.2, 1.0, 4)


# -- rotation equivariance ---------------------------------------------


def test_solutions_rotate_with_the_curve():
    alpha = 0.7
    base = solve_all(preset("ellipse(2,1)"), np.pi / 3)
    turned = solve_all(rotated(preset("ellipse(2,1)"), alpha), np.pi / 3)
    assert len(base) == len(turned)
    spin = np.exp(1j * alpha)
    for s in base:
        assert any(
            match_vertex_sets(spin * s.vertices, t.vertices, 1e-8) for t in turned
        )
        assert any(abs(t.center - spin * s.center) < 1e-8 for t in turned)


# -- parameter distances and clustering --------------------------------


def test_params_distance_ignores_relabeling():
    u = np.array([0.1, 2.0, 4.0, 5.5])
    relabeled = u[[1, 0, 3, 2]]  # both diagonals flipped
    assert params_distance(u, relabeled) == 0.0
    assert params_distance(u, u + 0.25) == pytest.approx(0.25, abs=1e-12)


def test_params_distance_wraps():
    u = np.array([0.01, 1.0, 2.0, 3.0])
    v = np.array([TWO_PI - 0.01, 1.0, 2.0, 3.0])
    assert params_distance(u, v) == pytest.approx(0.02, abs=1e-12)


def test_cluster_params_groups_jittered_copies():
    rng = np.random.default_rng(41)
    centers = np.array(
        [[0.3, 1.1, 2.9, 4.4], [1.9, 3.3, 5.1, 0.2], [6.0, 2.2, 3.8, 1.4]]
    )
    tol = 0.01
    pts, want = [], []
    for ci, center in enumerate(centers):
        for _ in range(20):
            pts.append(np.mod(center + rng.uniform(-tol / 3, tol / 3, 4), TWO_PI))
            want.append(ci)
    labels = cluster_params(np.array(pts), tol)
    want = np.array(want)
    # same cluster iff same center
    for ci in range(3):
        group = labels[want == ci]
        assert len(set(group.tolist())) == 1
    assert len(set(labels.tolist())) == 3


def test_cluster_params_joins_relabelings():
    u = np.array([0.3, 1.1, 2.9, 4.4])
    pts = np.array([u, u[[1, 0, 3, 2]] + 0.001])
    labels = cluster_params(pts, 0.01)
    assert labels[0] == labels[1]


# -- brute-force oracle ------------------------------------------------


def test_oracle_circle_hits_lie_on_the_square_family():
    c = preset("circle")
    hits = oracle_solve(c, np.pi / 2, grid=128, slack=0.05)
    assert len(hits) > 0
    for h in hits:
        p = np.array(h.params)
        # each diagonal of an inscribed circle square is a diameter and
        # the diagonals cross at a right angle
        assert abs(np.mod(p[1] - p[0], TWO_PI) - np.pi) < 0.1
        assert abs(np.mod(p[3] - p[2], TWO_PI) - np.pi) < 0.1
        gap = np.mod(p[2] - p[0], np.pi)
        assert min(gap, np.pi - gap) == pytest.approx(np.pi / 2, abs=0.1)


def test_oracle_zero_slack_empty():
    c = preset("perturbed-circle(1)")
    assert oracle_solve(c, 1.0, grid=64, slack=0.0) == []


def test_oracle_deterministic():
    c = preset("ellipse(2,1)")
    a = oracle_solve(c, np.pi / 3, grid=64, slack=0.05)
    b = oracle_solve(c, np.pi / 3, grid=64, slack=0.05)
    assert len(a) == len(b)
    for ha, hb in zip(a, b):
        assert ha.params == hb.params


def test_oracle_requires_minimum_grid():
    with pytest.raises(ValueError):
        oracle_solve(preset("circle"), 1.0, grid=32)
