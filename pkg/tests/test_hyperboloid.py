import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypwarp.hyperboloid import (TAU_ISO, TAU_POINT, DegenerateError, GeodesicSegment, Geodesic,
                                 GeometryError, HPoint, HTangent, Isometry, angle, complete_frame,
                                 dist, dist_arrays, exp_map, isometry_from_frames, log_map,
                                 mink_inner, orthonormalize, parallel_transport, random_frame,
                                 random_isometry, random_point, random_unit_tangent,
                                 standard_frame)

seeds = st.integers(0, 2**32 - 1)
O = HPoint.basepoint(3)


def test_mink_inner_examples():
    e0, e1 = np.eye(4)[0], np.eye(4)[1]
    assert mink_inner(e0, e0) == -1.0
    assert mink_inner(e0, e1) == 0.0
    x = np.array([math.cosh(1), math.sinh(1), 0, 0])
    assert mink_inner(x, e0) == pytest.approx(-1.5430806348152437, abs=1e-15)


def test_dist_examples():
    assert dist(O, O) == 0.0
    p2 = HPoint(np.array([math.cosh(2), math.sinh(2), 0, 0]))
    p1 = HPoint(np.array([math.cosh(1), 0, math.sinh(1), 0]))
    assert dist(O, p2) == pytest.approx(2.0, abs=1e-14)
    assert dist(O, p1) == pytest.approx(1.0, abs=1e-14)


def test_dist_small_separation_is_accurate():
    # arccosh of the raw pairing would lose about half the digits here
    q = HPoint(np.array([math.cosh(1e-9), math.sinh(1e-9), 0, 0]))
    assert dist(O, q) == pytest.approx(1e-9, rel=1e-6)


def test_exp_examples():
    v = HTangent(O, np.array([0, 1.0, 0, 0]))
    assert np.array_equal(exp_map(v, 0.0).vec, O.vec)
    np.testing.assert_allclose(exp_map(v, 2.0).vec, [math.cosh(2), math.sinh(2), 0, 0], atol=1e-14)


def test_invalid_point_and_tangent_raise():
    with pytest.raises(GeometryError):
        HPoint(np.array([2.0, 0, 0, 0]))
    with pytest.raises(GeometryError):
        HPoint(np.array([-1.0, 0, 0, 0]))
    with pytest.raises(GeometryError):
        HTangent(O, np.array([1.0, 0, 0, 0]))


def test_angle_examples():
    f = standard_frame(O)
    assert angle(f[0], f[0]) == pytest.approx(0.0, abs=1e-12)
    assert angle(f[0], f[1]) == pytest.approx(math.pi / 2, abs=1e-15)


def test_equilateral_triangle_angle():
    # vertices at mutual distance 1, oracle cos A = cosh 1 / (cosh 1 + 1)
    a = exp_map(HTangent(O, np.array([0, 1.0, 0, 0])), 1.0)
    c_ang = math.acos(math.cosh(1) / (math.cosh(1) + 1))
    w = HTangent(O, np.array([0, math.cos(c_ang), math.sin(c_ang), 0]))
    b = exp_map(w, 1.0)
    assert dist(a, b) == pytest.approx(1.0, abs=1e-12)
    assert angle(log_map(O, a), log_map(O, b)) == pytest.approx(0.9187978721780274, abs=1e-12)


def test_transport_examples(rng):
    p, q = random_point(rng), random_point(rng)
    seg = GeodesicSegment.between(p, q)
    t = log_map(p, q).normalized()
    moved = parallel_transport(t, seg)
    np.testing.assert_allclose(moved.dir, log_map(q, p).normalized().dir * -1, atol=1e-8)
    back = parallel_transport(moved, GeodesicSegment.between(q, p))
    np.testing.assert_allclose(back.dir, t.dir, atol=1e-8)


def test_isometry_from_frames_maps_frames(rng):
    p, q = random_point(rng), random_point(rng)
    fp, fq = random_frame(rng, p), random_frame(rng, q)
    g = isometry_from_frames(p, fp, q, fq)
    assert dist(g(p), q) <= TAU_POINT
    for a, b in zip(fp, fq):
        np.testing.assert_allclose(g(a).dir, b.dir, atol=1e-8 * q.vec[0] ** 2)


def test_degenerate_frame_raises():
    e = np.array([0, 1.0, 0, 0])
    with pytest.raises(DegenerateError):
        orthonormalize(O, [e, 2 * e])


def test_complete_frame_extends():
    fr = complete_frame(O, [np.array([0, 1.0, 1.0, 0])])
    A = np.array([v.dir for v in fr])
    G = mink_inner(A[:, None, :], A[None, :, :])
    np.testing.assert_allclose(G, np.eye(3), atol=1e-12)


def test_geodesic_point_at_is_unit_speed():
    g = Geodesic(standard_frame(O)[1])
    assert dist(g.point_at(-1.5), g.point_at(2.0)) == pytest.approx(3.5, abs=1e-12)


def test_dist_arrays_matches_scalar(rng):
    P = [random_point(rng) for _ in range(20)]
    Q = [random_point(rng) for _ in range(20)]
    d = dist_arrays(np.array([p.vec for p in P]), np.array([q.vec for q in Q]))
    np.testing.assert_allclose(d, [dist(p, q) for p, q in zip(P, Q)], rtol=1e-12, atol=1e-12)


# ---------------------------------------------------------------------------
# property tests


@given(seeds, st.floats(1e-6, 5.0))
def test_exp_log_inverse(seed, t):
    rng = np.random.default_rng(seed)
    p = random_point(rng)
    v = random_unit_tangent(rng, p)
    q = exp_map(v, t)
    assert dist(p, q) == pytest.approx(t, abs=1e-9 * max(1.0, t))
    w = log_map(p, q)
    assert w.is_unit
    assert dist(exp_map(w, dist(p, q)), q) <= 1e-9 * max(1.0, t)


def test_log_of_coincident_points_raises():
    with pytest.raises(DegenerateError):
        log_map(O, O)


@given(seeds)
def test_transport_preserves_gram(seed):
    rng = np.random.default_rng(seed)
    p, q = random_point(rng), random_point(rng)
    seg = GeodesicSegment.between(p, q)
    fr = random_frame(rng, p)
    moved = [parallel_transport(v, seg) for v in fr]
    A = np.array([v.dir for v in moved])
    G = mink_inner(A[:, None, :], A[None, :, :])
    assert np.max(np.abs(G - np.eye(3))) <= 1e-9 * q.vec[0] ** 2


@given(seeds)
def test_isometry_preserves_distance(seed):
    rng = np.random.default_rng(seed)
    g = random_isometry(rng)
    p, q = random_point(rng), random_point(rng)
    d = dist(p, q)
    assert abs(dist(g(p), g(q)) - d) <= TAU_ISO * max(1.0, d)
    assert isinstance(g.inverse() @ g, Isometry)
    assert dist((g.inverse() @ g)(p), p) <= TAU_ISO
