import math

import numpy as np
import pytest

from ccgeom import (
    centroid_curve,
    classify_lines,
    cone_direction_check,
    ellipsoid,
    fit_line,
    function_epigraph,
    hyperboloid_sheet,
    paraboloid_epigraph,
    sample_levels,
    sccp_residual,
    superellipsoid,
    unit_disk,
)
from ccgeom.errors import ConeSectionUnbounded, DegeneratePointSet, UnboundedSection

from oracles import parabola_chord_midpoint


def _unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_sample_levels_bounded_interior():
    d = unit_disk(center=[0.0, 5.0])
    ts = sample_levels(d, np.array([0.0, 1.0]))
    assert len(ts) >= 8
    assert all(4.0 < t < 6.0 for t in ts)


def test_sample_levels_half_infinite():
    p = paraboloid_epigraph([1.0, 1.0])
    ts = sample_levels(p, np.array([0.0, 0.0, 1.0]))
    assert len(ts) >= 8
    assert all(t > 0.0 for t in ts)
    assert list(ts) == sorted(ts)


def test_sample_levels_unbounded_direction_raises():
    p = paraboloid_epigraph([1.0, 1.0])
    with pytest.raises(UnboundedSection):
        sample_levels(p, np.array([1.0, 0.0, 0.0]))


def test_fit_line_exact_points():
    pts = np.array([[0.0, 0.0], [1.0, 1.0], [2.0, 2.0], [3.0, 3.0]])
    fit = fit_line(pts)
    assert fit.residual_norm < 1e-14
    assert abs(fit.dir @ _unit([1.0, 1.0])) == pytest.approx(1.0)


def test_fit_line_rejects_degenerate():
    with pytest.raises(DegeneratePointSet):
        fit_line(np.array([[1.0, 1.0]] * 5))


def test_parabola_centroid_line_matches_chord_oracle():
    p = function_epigraph("square")
    m = 0.7
    u = _unit([-m, 1.0])
    levels = sample_levels(p, u)
    curve = centroid_curve(p, u, levels)
    # each centroid must sit above the chord midpoint at the same level:
    # midpoint x is m/2 for every chord of slope m
    for c in curve:
        assert c[0] == pytest.approx(m / 2.0, abs=1e-9)
        mid = parabola_chord_midpoint(m, c[1] - m * c[0])
        assert mid[0] == pytest.approx(m / 2.0, abs=1e-12)
    fit = sccp_residual(p, u)
    assert fit.residual_norm <= 1e-10
    assert abs(fit.dir @ np.array([0.0, 1.0])) == pytest.approx(1.0, abs=1e-9)


def test_ellipse_centroid_lines_concurrent_at_center():
    e = ellipsoid([1.7, 0.6], center=[0.4, -0.3])
    fits = []
    for ang in np.linspace(0.1, math.pi, 6, endpoint=False):
        u = np.array([math.cos(ang), math.sin(ang)])
        fits.append(sccp_residual(e, u))
    v = classify_lines(fits)
    assert v.tag == "concurrent"
    assert np.allclose(v.witness, [0.4, -0.3], atol=1e-7)


def test_paraboloid_lines_parallel_vertical():
    p = paraboloid_epigraph([1.0, 0.5])
    rng = np.random.default_rng(11)
    fits = []
    while len(fits) < 6:
        u = rng.normal(size=3)
        u[2] = abs(u[2]) + 1.5
        u = _unit(u)
        fits.append(sccp_residual(p, u))
    v = classify_lines(fits)
    assert v.tag == "parallel"
    assert abs(v.witness @ np.array([0.0, 0.0, 1.0])) == pytest.approx(1.0, abs=1e-7)


def test_superellipse_oblique_is_not_collinear():
    se = superellipsoid(4.0)
    fit = sccp_residual(se, _unit([1.0, 2.0]))
    assert fit.residual_norm >= 1e-3
    # axis direction is an actual symmetry, so it stays collinear
    fit_axis = sccp_residual(se, np.array([0.0, 1.0]))
    assert fit_axis.residual_norm <= 1e-9


def test_classify_needs_enough_lines():
    e = ellipsoid([1.0, 1.0])
    fits = [sccp_residual(e, _unit([1.0, 0.2]))]
    with pytest.raises(ValueError):
        classify_lines(fits)


def test_cone_direction_check_hyperbola():
    h = hyperboloid_sheet([1.0])
    ang = cone_direction_check(h, np.array([0.3, 1.0]) / math.hypot(0.3, 1.0))
    assert ang <= 1e-7


def test_cone_direction_check_rejects_bounded_body():
    d = unit_disk()
    with pytest.raises(ConeSectionUnbounded):
        cone_direction_check(d, np.array([0.0, 1.0]))


def test_line_fit_json():
    e = ellipsoid([1.0, 1.0])
    fit = sccp_residual(e, _unit([1.0, 0.2]))
    j = fit.to_json()
    assert set(j) >= {"base", "dir", "residual_norm", "residual_rms", "n_points"}
