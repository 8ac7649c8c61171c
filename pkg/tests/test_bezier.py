import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quadshot.bezier import (
    BezierParams,
    Phase,
    bernstein_weights,
    derivative,
    evaluate,
    evaluate_many,
)


def random_params(rng):
    return BezierParams(rng.uniform(-0.5, 0.5, size=(5, 3)))


def test_endpoint_interpolation():
    rng = np.random.default_rng(0)
    for _ in range(20):
        p = random_params(rng)
        assert np.allclose(evaluate(p, 0.0), p.points[0], atol=0, rtol=0)
        assert np.allclose(evaluate(p, 1.0), p.points[4], atol=0, rtol=0)


def test_linear_precision_midpoint():
    # collinear evenly spaced points: B(t) = 4*t*spacing, so midpoint = point 2
    p = BezierParams([(0.5 * i, 0.0, 0.0) for i in range(5)])
    assert np.allclose(evaluate(p, 0.5), [1.0, 0.0, 0.0], atol=1e-15)


def test_constant_curve_is_constant():
    c = np.array([0.3, -0.1, 0.2])
    p = BezierParams(np.tile(c, (5, 1)))
    for t in np.linspace(0, 1, 11):
        assert np.allclose(evaluate(p, t), c, atol=1e-15)


def test_partition_of_unity():
    t = np.linspace(0.0, 1.0, 1001)
    w = bernstein_weights(t)
    assert np.abs(w.sum(axis=-1) - 1.0).max() <= 1e-12


def test_convex_hull_random():
    rng = np.random.default_rng(7)
    ts = np.linspace(0, 1, 100)
    for _ in range(1000):
        pts = rng.uniform(-1.0, 1.0, size=(5, 3))
        p = BezierParams(pts)
        vals = evaluate_many(np.broadcast_to(pts, (100, 5, 3)), ts)
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        assert np.all(vals >= lo - 1e-12) and np.all(vals <= hi + 1e-12)
        assert np.allclose(vals[0], evaluate(p, 0.0))


def test_out_of_range_phase_rejected():
    p = random_params(np.random.default_rng(1))
    with pytest.raises(ValueError):
        evaluate(p, 1.0001)
    with pytest.raises(ValueError):
        evaluate(p, -0.01)
    with pytest.raises(ValueError):
        Phase(t=2.0, span=1.0)
    with pytest.raises(ValueError):
        Phase(t=0.5, span=0.0)


def test_container_rejects_bad_shapes_and_values():
    with pytest.raises(ValueError):
        BezierParams(np.zeros((4, 3)))
    with pytest.raises(ValueError):
        BezierParams(np.full((5, 3), np.nan))
    with pytest.raises(ValueError):
        BezierParams(np.full((5, 3), 2.5))


def test_flat_roundtrip():
    rng = np.random.default_rng(3)
    p = random_params(rng)
    flat = p.to_flat()
    assert flat.shape == (15,)
    assert flat[0] == p.points[0, 0] and flat[5] == p.points[1, 2]
    assert np.array_equal(BezierParams.from_flat(flat).points, p.points)


def test_first_derivative_constant_and_linear():
    c = np.array([0.1, 0.2, 0.3])
    const = BezierParams(np.tile(c, (5, 1)))
    assert np.allclose(derivative(const, 0.3, order=1), 0.0, atol=1e-15)
    line = BezierParams([(0.5 * i, 0.0, 0.0) for i in range(5)])
    for t in np.linspace(0, 1, 7):
        assert np.allclose(derivative(line, t, order=1), [2.0, 0.0, 0.0], atol=1e-12)


def test_endpoint_derivative_exact():
    rng = np.random.default_rng(11)
    p = random_params(rng)
    expect = 4.0 * (p.points[1] - p.points[0])
    assert np.array_equal(derivative(p, 0.0, order=1), expect)


def test_derivative_matches_finite_difference():
    rng = np.random.default_rng(5)
    h = 1e-6
    for _ in range(50):
        p = random_params(rng)
        t = 0.37
        fd = (evaluate(p, t + h) - evaluate(p, t - h)) / (2 * h)
        an = derivative(p, t, order=1)
        assert np.abs(an - fd).max() <= 1e-5 * max(1.0, np.abs(fd).max())


def test_second_derivative_matches_first_difference():
    rng = np.random.default_rng(6)
    h = 1e-6
    for _ in range(50):
        p = random_params(rng)
        t = rng.uniform(0.1, 0.9)
        fd = (derivative(p, t + h, 1) - derivative(p, t - h, 1)) / (2 * h)
        an = derivative(p, t, order=2)
        assert np.abs(an - fd).max() <= 1e-4 * max(1.0, np.abs(fd).max())


def test_wall_clock_scaling():
    rng = np.random.default_rng(8)
    p = random_params(rng)
    ph = Phase(t=0.4, span=0.25)
    d1 = derivative(p, ph, 1, wall_clock=True)
    d2 = derivative(p, ph, 2, wall_clock=True)
    assert np.allclose(d1, derivative(p, 0.4, 1) / 0.25)
    assert np.allclose(d2, derivative(p, 0.4, 2) / 0.25**2)
    with pytest.raises(ValueError):
        derivative(p, 0.4, 1, wall_clock=True)


def test_unsupported_order_rejected():
    p = random_params(np.random.default_rng(2))
    with pytest.raises(ValueError):
        derivative(p, 0.5, order=3)


@given(st.lists(st.floats(-1.9, 1.9), min_size=15, max_size=15), st.floats(0.0, 1.0))
@settings(max_examples=200, deadline=None)
def test_evaluate_stays_in_hull_property(flat, t):
    pts = np.array(flat).reshape(5, 3)
    val = evaluate(BezierParams(pts), t)
    assert np.all(val >= pts.min(axis=0) - 1e-9)
    assert np.all(val <= pts.max(axis=0) + 1e-9)
