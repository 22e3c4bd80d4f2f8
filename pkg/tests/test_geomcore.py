import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles as O
from tomoscope.errors import DegenerateInputError
from tomoscope.geomcore import (
    LineD,
    PlaneD,
    angular_distance_mod_pi,
    classify_starline_angle,
    plane_frame,
    reflect_point_about_line,
    starline_generate,
    unit,
)

coord = st.floats(-10, 10, allow_nan=False)
vec3 = st.tuples(coord, coord, coord).map(np.array)
nonzero3 = vec3.filter(lambda v: np.linalg.norm(v) > 1e-3)


def test_reflect_examples():
    x_axis = LineD([0, 0, 0], [1, 0, 0])
    assert np.allclose(reflect_point_about_line(x_axis, [1, 2, 3]), [1, -2, -3], atol=1e-15)
    assert np.allclose(reflect_point_about_line(x_axis, [5, 0, 0]), [5, 0, 0], atol=1e-15)
    shifted = LineD([0, 0, 1], [1, 0, 0])
    assert np.allclose(reflect_point_about_line(shifted, [0, 1, 1]), [0, -1, 1], atol=1e-15)


@given(vec3, nonzero3, vec3)
def test_reflect_matches_oracle(p, d, x):
    got = reflect_point_about_line(LineD(p, d), x)
    assert np.allclose(got, O.reflect(p, d, x), atol=1e-9)


@given(vec3, nonzero3, vec3, vec3)
def test_reflection_is_isometric_involution(p, d, x, y):
    L = LineD(p, d)
    rx, ry = reflect_point_about_line(L, x), reflect_point_about_line(L, y)
    scale = 1.0 + np.linalg.norm(p) + np.linalg.norm(x) + np.linalg.norm(y)
    assert np.linalg.norm(reflect_point_about_line(L, rx) - x) <= 1e-12 * scale * 10
    assert abs(np.linalg.norm(rx - ry) - np.linalg.norm(x - y)) <= 1e-12 * scale * 10


@given(vec3, nonzero3, st.floats(-5, 5))
def test_reflection_fixes_line(p, d, t):
    L = LineD(p, d)
    x = L.at(t)
    assert np.allclose(reflect_point_about_line(L, x), x, atol=1e-12 * (1 + np.linalg.norm(x)))


def test_line_rejects_zero_direction():
    with pytest.raises(DegenerateInputError):
        LineD([0, 0, 0], [0, 0, 0])


def test_plane_frame_examples():
    f = plane_frame(PlaneD([0, 0, 1], 0))
    assert np.allclose(f.origin, 0) and np.allclose(f.e1, [1, 0, 0]) and np.allclose(f.e2, [0, 1, 0])
    f = plane_frame(PlaneD([1, 0, 0], 2))
    assert np.allclose(f.origin, [2, 0, 0]) and np.allclose(f.e1, [0, 1, 0]) and np.allclose(f.e2, [0, 0, 1])
    f = plane_frame(PlaneD(np.ones(3) / math.sqrt(3), 0))
    assert np.allclose(f.e1, np.array([2, -1, -1]) / math.sqrt(6), atol=1e-15)


@given(nonzero3, st.floats(-3, 3))
def test_plane_frame_orthonormal_right_handed(n, c):
    plane = PlaneD(n, c)
    f = plane_frame(plane)
    M = np.vstack([f.basis, f.normal])
    assert np.allclose(M @ M.T, np.eye(3), atol=1e-12)
    assert np.allclose(np.cross(f.e1, f.e2), f.normal, atol=1e-12)
    assert abs(plane.signed_distance(f.origin)) <= 1e-12 * (1 + abs(c))
    g = plane_frame(plane)
    assert np.array_equal(f.basis, g.basis) and np.array_equal(f.origin, g.origin)


@given(st.lists(st.floats(-1, 1), min_size=4, max_size=4).filter(lambda v: np.linalg.norm(v) > 1e-2))
def test_plane_frame_4d_orthonormal(n):
    f = plane_frame(PlaneD(n, 0.3))
    M = np.vstack([f.basis, f.normal])
    assert np.allclose(M @ M.T, np.eye(4), atol=1e-12)
    assert np.linalg.det(M) > 0


@pytest.mark.parametrize("q,expected", [(3, [0, 1, 2]), (2, [0, 1])])
def test_starline_closes_like_exact_recurrence(q, expected):
    st_ = starline_generate(0.0, math.pi / q, 100, 1e-9)
    orbit, closed = O.starline_exact(O.frac(0, 1), O.frac(1, q), 100)
    assert st_.closed and closed
    assert st_.period == len(orbit) == len(expected)
    assert np.allclose(st_.angles, [float(a) * math.pi for a in orbit], atol=1e-12)


def test_starline_irrational_is_dense():
    st_ = starline_generate(0.0, 1.0, 500, 1e-9)
    assert not st_.closed
    assert st_.max_gap < 0.05


def test_starline_degenerate():
    with pytest.raises(DegenerateInputError):
        starline_generate(0.3, 0.3 + math.pi, 100)


@given(st.integers(2, 40), st.integers(1, 39), st.floats(0, math.pi))
def test_starline_reflection_stable(q, p, base):
    if math.gcd(p, q) != 1 or p >= q:
        return
    s = starline_generate(base, base + p * math.pi / q, 200, 1e-9)
    assert s.closed and s.period == q
    a = np.array(s.angles)
    for i in range(len(a)):
        refl = np.mod(2 * a[i] - a, math.pi)
        dist = angular_distance_mod_pi(refl[:, None], a[None, :]).min(axis=1)
        assert dist.max() <= 1e-8


def test_classify_examples():
    assert str(classify_starline_angle(math.pi / 5)) == "Finite(5)"
    assert str(classify_starline_angle(math.pi / 2)) == "Finite(2)"
    golden = math.pi * (math.sqrt(5) - 1) / 2
    assert classify_starline_angle(golden).dense
    assert O.continued_fraction_denominator(golden / math.pi, 10_000, 1e-12 / math.pi) is None


@given(st.integers(1, 200), st.integers(2, 200))
def test_classify_agrees_with_continued_fraction(p, q):
    if p >= q:
        return
    delta = p * math.pi / q
    cls = classify_starline_angle(delta)
    expected = O.continued_fraction_denominator(delta / math.pi, 10_000, 1e-12 / math.pi)
    assert not cls.dense and cls.q == expected == q // math.gcd(p, q)


def test_dense_classification_implies_small_gap():
    for delta in (1.0, 0.5, 2.0, math.pi * (math.sqrt(5) - 1) / 2):
        assert classify_starline_angle(delta).dense
        assert starline_generate(0.0, delta, 500).max_gap < 0.05


def test_unit():
    assert np.allclose(unit([3, 4]), [0.6, 0.8])
    with pytest.raises(DegenerateInputError):
        unit([0, 0, 0])
