import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypwarp.distribution import (Arrangement, ChainReport, DistributionError, PlaneSample,
                                  boxes_along, chain_cover, check_enclosure, coverage_ok,
                                  crossings, cube_arrangement, enclosing_cube_search,
                                  enclosure_ok, eps_density, fibonacci_sphere, grassmann_dist,
                                  interlocking, probe_grid, recheck_chain, top_bottom)
from hypwarp.hyperboloid import (GeodesicSegment, Geodesic, HPoint, HTangent, exp_map,
                                 parallel_transport, random_frame, random_point, standard_frame)
from hypwarp.region import Hyperplane, box_model

O = HPoint.basepoint(3)
F = standard_frame(O)
AXIS = Geodesic(F[0])


def tilted(deg):
    a = math.radians(deg)
    return Geodesic(HTangent(O, np.array([0, math.cos(a), math.sin(a), 0])))


def rotated_normal(deg):
    a = math.radians(deg)
    return HTangent(O, np.array([0, math.cos(a), math.sin(a), 0]))


def test_grassmann_examples():
    a = PlaneSample.from_normal(F[0])
    assert grassmann_dist(a, a) == 0.0
    b = PlaneSample.from_normal(rotated_normal(20))
    assert grassmann_dist(a, b) == pytest.approx(math.radians(20), abs=1e-12)
    # same plane carried one unit along a geodesic lying in it
    q = exp_map(F[1], 1.0)
    moved = parallel_transport(F[0], GeodesicSegment.between(O, q))
    assert grassmann_dist(a, PlaneSample.from_normal(moved)) == pytest.approx(1.0, abs=1e-12)


def test_plane_sample_validation():
    with pytest.raises(DistributionError):
        PlaneSample(O, (F[0],))
    with pytest.raises(DistributionError):
        PlaneSample(O, (F[0], F[0]))


def test_eps_density_examples():
    S = [PlaneSample.from_normal(e) for e in F]
    assert eps_density(S, S) == 0.0
    probe = PlaneSample.from_normal(rotated_normal(15))
    assert eps_density(S, [probe]) == pytest.approx(math.pi / 12, abs=1e-12)
    assert eps_density(S[:1], [probe]) == grassmann_dist(S[0], probe)
    with pytest.raises(DistributionError):
        eps_density([], [probe])


def test_fibonacci_sphere_unit():
    P = fibonacci_sphere(50)
    assert P.shape == (50, 3)
    np.testing.assert_allclose(np.linalg.norm(P, axis=1), 1.0, atol=1e-14)


def test_probe_grid_and_density_monotone():
    probes = probe_grid(O, 0.5, n_radii=1, n_dirs=4, n_normals=6)
    S = probe_grid(O, 0.5, n_radii=1, n_dirs=4, n_normals=3, seed=1)
    d1 = eps_density(S, probes)
    d2 = eps_density(S + probes[:5], probes)
    assert d2 <= d1
    assert eps_density(probes, probes) == 0.0


def test_arrangement_rejects_duplicates_and_roundtrips():
    c = box_model(O, F, 0.1)
    u = c.faces[0, 0]
    with pytest.raises(DistributionError):
        Arrangement((Hyperplane(u), Hyperplane(-u)))
    arr = cube_arrangement([c, c])
    assert len(arr.hyperplanes) == 6
    back = Arrangement.from_dict(arr.to_dict())
    np.testing.assert_allclose(back.normals, arr.normals, atol=1e-15)
    assert len(arr.without(0).hyperplanes) == 5


def test_crossings_on_model_cube():
    c = box_model(O, F, 0.1)
    cr = crossings(AXIS, c.faces.reshape(-1, 4))
    assert cr.hits.tolist() == [True, True, False, False, False, False]
    np.testing.assert_allclose(np.sort(cr.s[:2]), [-0.1, 0.1], atol=1e-14)
    np.testing.assert_allclose(cr.angle[:2], math.pi / 2, atol=1e-9)
    tb = top_bottom(c, AXIS)
    assert tb is not None


def test_check_enclosure_conditions():
    c = box_model(O, F, 0.1)
    res = check_enclosure(c, AXIS, 0.1, 0.05)
    assert enclosure_ok(res)
    bad = check_enclosure(c, tilted(30), 0.1, 0.1)
    assert not enclosure_ok(bad)


def test_search_examples():
    c = box_model(O, F, 0.1)
    arr = cube_arrangement([c])
    found = enclosing_cube_search(arr, AXIS, 0.1, 0.1, 0.0)
    assert found is not None
    np.testing.assert_allclose(np.sort(found.vertices, axis=0), np.sort(c.vertices, axis=0),
                               atol=1e-12)
    assert enclosing_cube_search(arr, tilted(30), 0.1, 0.1, 0.0) is None
    for k in range(6):
        assert enclosing_cube_search(arr.without(k), AXIS, 0.1, 0.1, 0.0) is None


def test_search_ignores_distractors(rng):
    c = box_model(O, F, 0.1)
    p = random_point(rng, radius=1.0)
    noise = [box_model(p, random_frame(rng, p), 0.1)]
    arr = cube_arrangement(noise + [c])
    found = enclosing_cube_search(arr, AXIS, 0.1, 0.05, 0.0)
    assert found is not None and enclosure_ok(check_enclosure(found, AXIS, 0.1, 0.05))


def test_interlocking_directed():
    a = box_model(AXIS.point_at(0.0), [AXIS.tangent_at(0.0), *F[1:]], 0.1)
    g1 = GeodesicSegment.between(O, AXIS.point_at(0.15))
    fb = [parallel_transport(v, g1) for v in F]
    b = box_model(AXIS.point_at(0.15), fb, 0.1)
    assert interlocking(a, b, AXIS)
    assert not interlocking(b, a, AXIS)
    far = box_model(AXIS.point_at(1.0), [parallel_transport(v, GeodesicSegment.between(
        O, AXIS.point_at(1.0))) for v in F], 0.1)
    assert not interlocking(a, far, AXIS)


def test_interlocking_precondition():
    a = box_model(O, F, 0.1)
    off = box_model(exp_map(F[1], 2.0), standard_frame(exp_map(F[1], 2.0)), 0.1)
    with pytest.raises(DistributionError):
        interlocking(a, off, AXIS)


def test_coverage_ok():
    assert coverage_ok([(-1.0, 0.1), (0.0, 1.2)], -1.0, 1.0)
    assert not coverage_ok([(-1.0, 0.1), (0.2, 1.2)], -1.0, 1.0)


def short_arrangement():
    return cube_arrangement(boxes_along(AXIS, 0.1, -1.4, 1.4, 0.1))


def test_chain_cover_short_arc():
    arr = short_arrangement()
    rep = chain_cover(arr, AXIS, (-1.0, 1.0), 0.1, 0.05)
    assert rep.success and rep.failure_at is None
    assert all(rep.interlocking)
    assert len(rep.interlocking) == len(rep.cubes) - 1
    assert coverage_ok(rep.intervals, -1.0, 1.0)
    assert recheck_chain(rep, AXIS, 0.1, 0.05)
    d = rep.to_dict()
    assert d["success"] and d["schema_version"] == 1


def test_chain_cover_localized_failure():
    arr = short_arrangement()
    cr = crossings(AXIS, arr.normals)
    k = int(np.argmin(np.where(cr.hits, np.abs(cr.s - 0.3), np.inf)))
    rep = chain_cover(arr.without(k), AXIS, (-1.0, 1.0), 0.1, 0.05)
    assert not rep.success
    assert 0.0 <= rep.failure_at <= 0.4
    assert rep.message


def test_recheck_rejects_tampered_chain():
    rep = chain_cover(short_arrangement(), AXIS, (-0.5, 0.5), 0.1, 0.05)
    bad = ChainReport(cubes=rep.cubes[::-1], interlocking=rep.interlocking,
                      intervals=rep.intervals, conditions=rep.conditions, arc=rep.arc,
                      success=True)
    assert not recheck_chain(bad, AXIS, 0.1, 0.05)


@given(st.integers(0, 2**32 - 1))
def test_grassmann_symmetric(seed):
    rng = np.random.default_rng(seed)
    p, q = random_point(rng, radius=1.5), random_point(rng, radius=1.5)
    a = PlaneSample(p, tuple(random_frame(rng, p)[:2]))
    b = PlaneSample(q, tuple(random_frame(rng, q)[:2]))
    assert grassmann_dist(a, b) == pytest.approx(grassmann_dist(b, a), abs=1e-9)
    assert grassmann_dist(a, a) == 0.0
