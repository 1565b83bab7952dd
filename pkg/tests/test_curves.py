"""Curve representation, evaluation, fitting, and validity checks."""

import numpy as np
import pytest

from _oracles import arclength_fourier
from inscribed.curves import (
    CORPUS,
    Curve,
    evaluate,
    derivative,
    fit_deviation,
    fit_from_points,
    preset,
    preset_names,
    rotated,
    translated,
    validate,
)
from inscribed.errors import DegenerateInput, TooFewPoints, UnknownPreset

TWO_PI = 2.0 * np.pi


def circle_points(m=256, radius=1.0):
    s = np.arange(m) * (TWO_PI / m)
    return np.column_stack([radius * np.cos(s), radius * np.sin(s)])


def test_evaluate_circle_cardinal_points():
    c = preset("circle")
    assert evaluate(c, 0.0) == pytest.approx(1.0 + 0.0j, abs=1e-15)
    assert evaluate(c, np.pi / 2) == pytest.approx(1j, abs=1e-15)


def test_evaluate_ellipse_major_axis():
    e = preset("ellipse(2,1)")
    assert evaluate(e, 0.0) == pytest.approx(2.0 + 0.0j, abs=1e-14)
    # c_1 = (a+b)/2, c_{-1} = (a-b)/2
    assert e.coeffs[e.n + 1] == pytest.approx(1.5)
    assert e.coeffs[e.n - 1] == pytest.approx(0.5)


def test_evaluate_vectorized_matches_scalar():
    c = preset("perturbed-circle(1)")
    s = np.linspace(0, TWO_PI, 17)
    batch = evaluate(c, s)
    for si, zi in zip(s, batch):
        assert evaluate(c, float(si)) == pytest.approx(zi, abs=1e-14)


def test_periodicity():
    for name in CORPUS:
        c = preset(name)
        s = np.linspace(0.0, TWO_PI, 37)
        assert np.abs(evaluate(c, s) - evaluate(c, s + TWO_PI)).max() < 1e-12


def test_derivative_circle():
    c = preset("circle")
    assert derivative(c, 0.0) == pytest.approx(1j, abs=1e-15)
    assert derivative(c, np.pi) == pytest.approx(-1j, abs=1e-13)


def test_derivative_matches_central_differences():
    rng = np.random.default_rng(7)
    h = 1e-5
    for name in CORPUS:
        c = preset(name)
        s = rng.uniform(0, TWO_PI, 100)
        fd = (evaluate(c, s + h) - evaluate(c, s - h)) / (2 * h)
        an = derivative(c, s)
        rel = np.abs(an - fd) / np.maximum(np.abs(an), 1e-12)
        assert rel.max() < 1e-6, name


def test_conjugation_symmetric_point_sets():
    # real coefficients give conj(gamma(s)) = gamma(-s), so the traced
    # point set is symmetric under complex conjugation as a set
    rng = np.random.default_rng(3)
    coeffs = np.zeros(9)
    coeffs[5] = 1.0  # unit circle, n = 4
    coeffs = coeffs + 0.05 * rng.standard_normal(9)
    c = Curve(coeffs.astype(complex))
    s = np.arange(512) * (TWO_PI / 512)
    pts = evaluate(c, s)
    conj = np.conj(pts)
    d = np.abs(pts[:, None] - conj[None, :]).min(axis=1)
    assert d.max() < 1e-9


def test_fit_circle_recovers_single_harmonic():
    c = fit_from_points(circle_points(), cutoff=8)
    k1 = c.coeffs[c.n + 1]
    assert abs(k1 - 1.0) < 1e-10
    others = np.delete(c.coeffs, c.n + 1)
    assert np.abs(others).max() < 1e-10


def test_fit_ellipse_matches_independent_resampler():
    s = np.arange(256) * (TWO_PI / 256)
    pts = np.column_stack([2 * np.cos(s), np.sin(s)])
    c = fit_from_points(pts, cutoff=8)
    ks, want = arclength_fourier(pts, 8)
    got = c.coeffs
    assert got.shape == want.shape
    assert np.abs(got - want).max() < 1e-10
    # arclength resampling shifts the harmonics from (1.5, 0.5) a little
    assert abs(c.coeffs[c.n + 1] - 1.5) < 0.15
    assert abs(c.coeffs[c.n - 1] - 0.5) < 0.15


def test_fit_reproduces_constant_speed_curve():
    # a circle is traced at constant speed, so resampling is the identity
    # and the fit reproduces samples at matching parameters
    c = fit_from_points(circle_points(), cutoff=8)
    s = np.linspace(0, TWO_PI, 101)
    want = np.cos(s) + 1j * np.sin(s)
    assert np.abs(evaluate(c, s) - want).max() < 1e-8


def test_fit_stays_close_to_smooth_input():
    s = np.arange(512) * (TWO_PI / 512)
    pts = np.column_stack([2 * np.cos(s), np.sin(s)])
    c = fit_from_points(pts, cutoff=16)
    assert fit_deviation(pts, c) < 0.01


def test_fit_rejects_too_few_points():
    with pytest.raises(TooFewPoints):
        fit_from_points([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])


def test_fit_rejects_degenerate_polygon():
    pts = np.zeros((32, 2))
    with pytest.raises(DegenerateInput):
        fit_from_points(pts)


def test_fit_drops_explicit_closing_point():
    pts = circle_points(128)
    closed = np.vstack([pts, pts[:1]])
    a = fit_from_points(pts, cutoff=6)
    b = fit_from_points(closed, cutoff=6)
    assert np.abs(a.coeffs - b.coeffs).max() < 1e-12


def test_validate_circle():
    rep = validate(preset("circle"), samples=512)
    assert rep.is_immersed
    assert rep.min_speed == pytest.approx(1.0, abs=1e-9)
    assert rep.is_simple
    assert rep.first_crossing is None
    assert rep.ok


def test_validate_figure_eight_reports_crossing():
    # gamma(s) = sin(2s) + i sin(s): crosses itself at the origin
    coeffs = np.array([0.5j, -0.5, 0.0, 0.5, -0.5j], dtype=complex)
    rep = validate(Curve(coeffs))
    assert not rep.is_simple
    assert rep.first_crossing is not None
    s1, s2 = rep.first_crossing
    # the crossing happens where both branches pass the origin (s = 0, pi)
    near = lambda x: min(x % TWO_PI, TWO_PI - x % TWO_PI, abs(x % TWO_PI - np.pi))
    assert near(s1) < 0.05 and near(s2) < 0.05
    assert not rep.ok


def test_validate_translation_invariance():
    base = validate(preset("circle"), samples=512)
    moved = validate(translated(preset("circle"), 5.0 + 0.0j), samples=512)
    assert moved.is_immersed == base.is_immersed
    assert moved.is_simple == base.is_simple
    assert moved.min_speed == pytest.approx(base.min_speed, abs=1e-12)


def test_presets_all_valid():
    for name in preset_names():
        rep = validate(preset(name))
        assert rep.ok, name


def test_preset_arguments_and_unknown():
    e = preset("ellipse(2,1)")
    assert e.coeffs[e.n + 1] == pytest.approx(1.5)
    with pytest.raises(UnknownPreset):
        preset("unknown")
    with pytest.raises(UnknownPreset):
        preset("ellipse(2,1,9,9)")


def test_corpus_is_the_acceptance_five():
    assert CORPUS == (
        "circle",
        "ellipse(2,1)",
        "rounded-rectangle",
        "perturbed-circle(1)",
        "perturbed-circle(2)",
    )


def test_rotated_curve_points_rotate():
    c = preset("ellipse(2,1)")
    r = rotated(c, 0.7)
    s = np.linspace(0, TWO_PI, 33)
    assert np.abs(evaluate(r, s) - np.exp(0.7j) * evaluate(c, s)).max() < 1e-12


def test_diameter_of_known_shapes():
    assert preset("circle").diameter == pytest.approx(2.0, rel=1e-6)
    assert preset("ellipse(2,1)").diameter == pytest.approx(4.0, rel=1e-6)
