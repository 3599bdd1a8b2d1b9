import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypwarp.hyperboloid import (Geodesic, HPoint, HTangent, exp_map, mink_inner, random_frame,
                                 random_isometry, random_point, standard_frame)
from hypwarp.region import (CubeError, HCube, Hyperplane, box_model, common_perpendicular,
                            cube_from_dict, cube_shape, cube_to_dict, delta_close, eps_max,
                            geodesic_hits_hyperplane, hyperplane_gap, hyperplane_through,
                            signed_dist)

O = HPoint.basepoint(3)
F = standard_frame(O)


def test_hyperplane_through_basepoint():
    H = hyperplane_through(O, F[0])
    np.testing.assert_allclose(H.normal, [0, 1, 0, 0], atol=1e-15)
    assert signed_dist(O, H) == 0.0


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.3, 1.0])
def test_offset_hyperplane_normal(eps):
    # the axis geodesic's velocity at parameter eps is sinh(eps) P + cosh(eps) E
    q = exp_map(F[1], eps)
    H = hyperplane_through(q, HTangent(q, math.sinh(eps) * O.vec + math.cosh(eps) * F[1].dir))
    expected = math.sinh(eps) * O.vec + math.cosh(eps) * np.eye(4)[2]
    np.testing.assert_allclose(H.normal, expected, atol=1e-14)
    assert signed_dist(O, H) == pytest.approx(-eps, abs=1e-14)


def test_hyperplane_rejects_non_unit():
    with pytest.raises(ValueError):
        Hyperplane(np.array([0, 2.0, 0, 0]))


def test_box_model_combinatorics():
    c = box_model(O, F, 0.1)
    assert c.faces.shape == (3, 2, 4)
    assert c.vertices.shape == (8, 4)
    assert len(c.edges) == 12
    for k in range(8):
        on = [abs(mink_inner(c.vertices[k], c.faces[i, s])) <= 1e-12
              for i in range(3) for s in (0, 1)]
        assert sum(on) == 3


@pytest.mark.parametrize("eps", [0.05, 0.1, 0.3])
def test_box_model_normals_and_center(eps):
    c = box_model(O, F, eps)
    for i in range(3):
        for s in (0, 1):
            u = c.faces[i, s]
            assert abs(signed_dist(O, Hyperplane(u))) == pytest.approx(eps, abs=1e-14)
            target = math.sinh(eps) * O.vec + math.cosh(eps) * np.eye(4)[i + 1] * (1 if s else -1)
            assert min(np.max(np.abs(u - target)), np.max(np.abs(u + target))) <= 1e-14
        for j in range(3):
            if i != j:
                assert mink_inner(c.faces[i, 1], c.faces[j, 1]) == pytest.approx(
                    -math.sinh(eps) ** 2, abs=1e-12)


def test_box_model_too_large_raises():
    with pytest.raises(CubeError):
        box_model(O, F, eps_max(3) * 1.01)
    box_model(O, F, eps_max(3) * 0.99)


def test_eps_max_closed_form():
    # vertices run off to infinity when 3 tanh^2 eps = 1
    assert eps_max(3) == pytest.approx(math.atanh(1 / math.sqrt(3)), abs=1e-9)


def test_vertex_angles_tend_to_right_angle():
    sh = cube_shape(box_model(O, F, 1e-3))
    assert np.max(np.abs(np.array(sh.angles()) - math.pi / 2)) <= 1e-4


def test_delta_close_identity_and_isometry(rng):
    c = box_model(O, F, 0.1)
    assert delta_close(c, c) == 0.0
    g = random_isometry(rng)
    assert delta_close(c, c.transformed(g)) <= 1e-9


def test_delta_close_frozen_value():
    # closed-form oracle: vertex coordinates x_i = x_0 tanh(eps), edges and
    # angles from the hyperbolic law of cosines, evaluated at 40 digits
    a = box_model(O, F, 0.1)
    b = box_model(O, F, 0.11)
    assert delta_close(a, b) == pytest.approx(0.020680815377509449, abs=1e-12)


def test_hyperplane_gap_and_perpendicular():
    c = box_model(O, F, 0.2)
    A, B = Hyperplane(c.faces[0, 0]), Hyperplane(c.faces[0, 1])
    assert hyperplane_gap(A, B) == pytest.approx(0.4, abs=1e-12)
    p, q = common_perpendicular(A, B)
    assert A.contains(p) and B.contains(q)


def test_geodesic_hits():
    c = box_model(O, F, 0.1)
    g = Geodesic(F[0])
    hit = geodesic_hits_hyperplane(g, Hyperplane(c.faces[0, 1]))
    assert hit is not None
    assert abs(hit.s) == pytest.approx(0.1, abs=1e-14)
    assert hit.angle == pytest.approx(math.pi / 2, abs=1e-9)
    assert geodesic_hits_hyperplane(g, Hyperplane(c.faces[1, 1])) is None


def test_cube_dict_roundtrip(rng):
    p = random_point(rng, radius=1.0)
    c = box_model(p, random_frame(rng, p), 0.2)
    d = cube_to_dict(c)
    c2 = cube_from_dict(d)
    np.testing.assert_allclose(c2.vertices, c.vertices, atol=1e-9)
    with pytest.raises(CubeError):
        cube_from_dict({"faces": []})


@given(st.integers(0, 2**32 - 1), st.floats(0.02, 0.5))
def test_box_model_property(seed, eps):
    rng = np.random.default_rng(seed)
    p = random_point(rng, radius=2.0)
    c = box_model(p, random_frame(rng, p), eps)
    assert isinstance(c, HCube)
    assert c.contains(p)
    e = np.array(cube_shape(c).edges())
    assert np.ptp(e) <= 1e-9
