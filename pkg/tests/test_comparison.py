import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypwarp.comparison import (TAU_POLY, ComparisonError, ComparisonPolygon, ComparisonViolation,
                                ModelSpace, angle_from_sides, chord_pairs, law_of_cosines,
                                model_chords, polygon_chord_induction, polygon_from_vertices,
                                random_convex_polygon, realize_polygon,
                                regular_right_pentagon_side, self_provider, space_form_provider,
                                trace_polygon, triangle_compare)
from hypwarp.hyperboloid import HPoint, HTangent, dist, exp_map

side = st.floats(0.1, 3.0)
opening = st.floats(0.05, math.pi - 0.05)


def test_law_of_cosines_examples():
    # arccosh(cosh^2 1) and arccosh(cosh^2 2)/2, evaluated at 30 digits
    assert law_of_cosines(1, 1, 1, math.pi / 2) == pytest.approx(1.5133740065965040, abs=1e-14)
    assert law_of_cosines(4, 1, 1, math.pi / 2) == pytest.approx(1.6709512240946382, abs=1e-14)
    assert law_of_cosines(ModelSpace(4), 1, 1, math.pi / 2) == law_of_cosines(4, 1, 1, math.pi / 2)


def test_law_of_cosines_degenerate_limits():
    assert law_of_cosines(1, 0.7, 1.1, math.pi) == pytest.approx(1.8, abs=1e-12)
    assert law_of_cosines(1, 0.7, 1.1, 0.0) == pytest.approx(0.4, abs=1e-12)
    assert law_of_cosines(1, 0.7, 1.1, math.pi - 1e-7) == pytest.approx(1.8, abs=1e-6)


def test_law_of_cosines_small_angle_accuracy():
    # the stable half-angle form keeps relative accuracy for thin triangles
    c = law_of_cosines(1, 1.0, 1.0, 1e-9)
    assert c == pytest.approx(2 * math.asinh(math.sinh(1.0) * math.sin(0.5e-9)), rel=1e-12)


def test_model_space_validation():
    with pytest.raises(ComparisonError):
        ModelSpace(0.5)


def test_triangle_compare_example():
    r = triangle_compare(4, 1, 1, math.pi / 2)
    assert r.c_k > r.c_model and not r.equality
    assert triangle_compare(1, 1, 1, math.pi / 2).equality


def test_realized_triangle_matches_dist():
    o = HPoint.basepoint(2)
    a, b, g = 1.3, 0.8, 1.1
    p = exp_map(HTangent(o, np.array([0, 1.0, 0])), a)
    q = exp_map(HTangent(o, np.array([0, math.cos(g), math.sin(g)])), b)
    assert dist(p, q) == pytest.approx(law_of_cosines(1, a, b, g), abs=1e-12)


def test_regular_right_pentagon():
    s = regular_right_pentagon_side()
    assert s == pytest.approx(1.0612750619050357, abs=1e-14)
    p = ComparisonPolygon([s] * 5, [math.pi / 2] * 5)
    _, defect = trace_polygon(p)
    assert defect <= TAU_POLY
    assert len(realize_polygon(p)) == 5


def test_triangle_from_trig_closes():
    a, b, g = 1.2, 0.9, 1.3
    c = law_of_cosines(1, a, b, g)
    A = angle_from_sides(1, b, c, a)
    B = angle_from_sides(1, c, a, b)
    p = ComparisonPolygon([a, b, c], [B, g, A])
    pts = realize_polygon(p)
    assert A + B + g < math.pi
    assert dist(pts[0], pts[1]) == pytest.approx(a, abs=1e-10)


def test_non_realizable_rejected():
    with pytest.raises(ComparisonError):
        realize_polygon(ComparisonPolygon([1, 1, 1], [0.1, 0.1, 0.1]))
    with pytest.raises(ComparisonError):
        ComparisonPolygon([1, -1, 1], [1, 1, 1])


def test_polygon_from_vertices_roundtrip(rng):
    p = random_convex_polygon(rng, 6)
    q = polygon_from_vertices(realize_polygon(p))
    np.testing.assert_allclose(q.sides, p.sides, atol=1e-10)
    np.testing.assert_allclose(q.angles, p.angles, atol=1e-10)
    assert ComparisonPolygon.from_dict(p.to_dict()) == p


def test_chord_pairs_cover_all():
    pairs = list(chord_pairs(6))
    assert len(pairs) == 15
    assert all(1 <= span <= 3 for _, _, _, span in pairs)


def test_model_chords_match_realization(rng):
    p = random_convex_polygon(rng, 6)
    pts = realize_polygon(p)
    ch = model_chords(p, 2)
    for span in range(1, 6):
        assert ch[span] == pytest.approx(dist(pts[2], pts[(2 + span) % 6]), abs=1e-9)


def test_induction_self_provider(rng):
    p = random_convex_polygon(rng, 5)
    v = polygon_chord_induction(p, self_provider(p))
    assert v.valid and v.all_equal and v.first_strict is None
    assert len(v.chords) == 10


def test_induction_curvature_four(rng):
    p = random_convex_polygon(rng, 6)
    v = polygon_chord_induction(p, space_form_provider(p, 4))
    assert v.valid and v.all_geq and not v.all_equal
    assert all(c["test"] > c["model"] for c in v.chords if c["span"] >= 2)
    d = v.to_dict()
    assert d["all_geq"] and d["schema_version"] == 1


def test_induction_detects_shrunken_provider(rng):
    p = random_convex_polygon(rng, 5)
    ref = self_provider(p)
    with pytest.raises(ComparisonViolation, match=r"\(0,1\)"):
        polygon_chord_induction(p, lambda i, span: 0.9 * ref(i, span))


@given(side, side, opening, st.floats(1.01, 10.0))
def test_third_side_increases_with_curvature(a, b, g, k):
    assert law_of_cosines(k, a, b, g) > law_of_cosines(1, a, b, g)


@given(side, side, opening)
def test_angle_from_sides_inverts_law(a, b, g):
    c = law_of_cosines(1, a, b, g)
    assert angle_from_sides(1, a, b, c) == pytest.approx(g, abs=1e-7)


@given(st.integers(0, 2**32 - 1), st.sampled_from([4, 5, 6, 7]))
def test_space_form_chords_dominate(seed, n):
    p = random_convex_polygon(np.random.default_rng(seed), n)
    assert polygon_chord_induction(p, space_form_provider(p, 2.5)).all_geq
