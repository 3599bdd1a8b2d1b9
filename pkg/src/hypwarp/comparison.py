"""Triangle and polygon comparison between curvature -1 and curvature -k.

A space form of curvature -k is H^2 with distances divided by sqrt(k), so
every computation here runs in the hyperboloid model of H^2 after scaling
lengths by sqrt(k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hyperboloid import GeometryError, HPoint, dist, log_map, angle, mink_inner

TAU_POLY = 1e-8
SCHEMA_VERSION = 1


class ComparisonError(GeometryError):
    pass


class ComparisonViolation(ComparisonError):
    """A provider chord came out shorter than the curvature -1 model allows."""


@dataclass(frozen=True)
class ModelSpace:
    k: float = 1.0

    def __post_init__(self):
        if not self.k >= 1.0:
            raise ComparisonError("model spaces here have curvature -k with k >= 1")

    @property
    def scale(self) -> float:
        return math.sqrt(self.k)


def _k(space) -> float:
    return space.k if isinstance(space, ModelSpace) else ModelSpace(float(space)).k


def law_of_cosines(k, a: float, b: float, gamma: float) -> float:
    """Third side opposite ``gamma`` in curvature ``-k``.

    Uses ``sinh^2(c/2) = sinh^2((a-b)/2) + sinh a sinh b sin^2(gamma/2)`` (in
    sqrt(k)-scaled lengths), which keeps full precision for thin triangles.
    """
    r = math.sqrt(_k(k))
    if a < 0 or b < 0:
        raise ComparisonError("side lengths must be non-negative")
    A, B = r * a, r * b
    s2 = math.sinh((A - B) / 2) ** 2 + math.sinh(A) * math.sinh(B) * math.sin(gamma / 2) ** 2
    return 2.0 * math.asinh(math.sqrt(s2)) / r


def angle_from_sides(k, a: float, b: float, c: float) -> float:
    """Angle between sides ``a`` and ``b`` of a triangle with third side ``c``."""
    r = math.sqrt(_k(k))
    A, B, C = r * a, r * b, r * c
    den = math.sinh(A) * math.sinh(B)
    if den <= 0:
        raise ComparisonError("degenerate triangle")
    s2 = (math.sinh(C / 2) ** 2 - math.sinh((A - B) / 2) ** 2) / den
    return 2.0 * math.asin(math.sqrt(min(max(s2, 0.0), 1.0)))


@dataclass(frozen=True)
class TriangleComparison:
    c_model: float
    c_k: float
    equality: bool


def triangle_compare(k, a: float, b: float, gamma: float, tol: float = TAU_POLY) -> TriangleComparison:
    """Third side at curvature -1 and -k for the same hinge ``(a, b, gamma)``."""
    c1 = law_of_cosines(1.0, a, b, gamma)
    ck = law_of_cosines(k, a, b, gamma)
    return TriangleComparison(c1, ck, abs(ck - c1) <= tol)


@dataclass(frozen=True)
class ComparisonPolygon:
    """Side lengths ``sides[i] = |v_i v_{i+1}|`` and interior angles ``angles[i]`` at ``v_i``."""

    sides: tuple
    angles: tuple

    def __post_init__(self):
        s = tuple(float(x) for x in self.sides)
        a = tuple(float(x) for x in self.angles)
        if len(s) < 3 or len(s) != len(a):
            raise ComparisonError("need at least 3 sides and one angle per vertex")
        if min(s) <= 0:
            raise ComparisonError("sides must be positive")
        if not all(0 < x < math.pi for x in a):
            raise ComparisonError("angles must lie in (0, pi)")
        object.__setattr__(self, "sides", s)
        object.__setattr__(self, "angles", a)

    def __len__(self) -> int:
        return len(self.sides)

    def to_dict(self) -> dict:
        return {"sides": list(self.sides), "angles": list(self.angles)}

    @classmethod
    def from_dict(cls, d: dict) -> "ComparisonPolygon":
        try:
            return cls(d["sides"], d["angles"])
        except (KeyError, TypeError) as exc:
            raise ComparisonError(f"malformed polygon: {exc}") from exc


def polygon_from_vertices(V) -> ComparisonPolygon:
    """Side/angle data of a convex polygon given by H^2 vertices in order."""
    pts = [v if isinstance(v, HPoint) else HPoint(np.asarray(v, float)) for v in V]
    n = len(pts)
    sides = [dist(pts[i], pts[(i + 1) % n]) for i in range(n)]
    angs = [angle(log_map(pts[i], pts[i - 1]), log_map(pts[i], pts[(i + 1) % n])) for i in range(n)]
    return ComparisonPolygon(sides, angs)


def _trace(sides, turns, scale: float):
    """Walk in H^2 from the basepoint along +x, turning left by ``turns[i]`` after side i."""
    v = np.array([1.0, 0.0, 0.0])
    t = np.array([0.0, 1.0, 0.0])
    J = np.diag([-1.0, 1.0, 1.0])
    pts = [v]
    for s, turn in zip(sides, turns):
        L = scale * s
        v, t = math.cosh(L) * v + math.sinh(L) * t, math.sinh(L) * v + math.cosh(L) * t
        v = v / math.sqrt(-mink_inner(v, v))
        t = t + mink_inner(t, v) * v
        t = t / math.sqrt(mink_inner(t, t))
        nrm = J @ np.cross(v, t)
        nrm = nrm / math.sqrt(mink_inner(nrm, nrm))
        t = math.cos(turn) * t + math.sin(turn) * nrm
        pts.append(v)
    return np.array(pts), t


def trace_polygon(p: ComparisonPolygon, k=1.0):
    """Trace the side/angle data at curvature -k; returns ``(vertices, closure_defect)``.

    Vertices are in the hyperboloid model of H^2 with lengths scaled by sqrt(k).
    The defect combines the gap between the last and first vertex (in
    curvature -k units) and the mismatch of the final heading.
    """
    r = math.sqrt(_k(k))
    n = len(p)
    turns = [math.pi - p.angles[(i + 1) % n] for i in range(n)]
    pts, heading = _trace(p.sides, turns, r)
    gap = dist(HPoint(pts[0]), HPoint(pts[-1])) / r
    head = float(np.linalg.norm(heading - np.array([0.0, 1.0, 0.0])))
    return pts[:-1], max(gap, head)


def realize_polygon(p: ComparisonPolygon, tol: float = TAU_POLY) -> list[HPoint]:
    """Vertices of the polygon in H^2; raises if the data does not close up."""
    pts, defect = trace_polygon(p, 1.0)
    if defect > tol:
        raise ComparisonError(f"polygon does not close: defect {defect:.3e}")
    return [HPoint(v) for v in pts]


# ---------------------------------------------------------------------------
# chord providers: provider(start, span) -> |v_start v_{start+span}| (indices mod len)

ChordProvider = Callable[[int, int], float]


def self_provider(p: ComparisonPolygon) -> ChordProvider:
    """Chords of the closed curvature -1 realization."""
    V = realize_polygon(p)
    n = len(p)
    return lambda i, m: dist(V[i % n], V[(i + m) % n])


def space_form_provider(p: ComparisonPolygon, k) -> ChordProvider:
    """Chords of the curvature -k chain with the polygon's sides and angles.

    The chain from ``v_i`` runs forward through ``span`` sides, turning by the
    exterior angle at each intermediate vertex. A closed polygon with these
    data generally does not exist at curvature -k, so each chord is measured
    on its own open chain.
    """
    r = math.sqrt(_k(k))
    n = len(p)

    def chord(i: int, m: int) -> float:
        sides = [p.sides[(i + q) % n] for q in range(m)]
        turns = [math.pi - p.angles[(i + q + 1) % n] for q in range(m)]
        pts, _ = _trace(sides, turns, r)
        return dist(HPoint(pts[0]), HPoint(pts[-1])) / r

    return chord


def model_chords(p: ComparisonPolygon, start: int) -> list[float]:
    """Curvature -1 chords from ``v_start`` by iterated law of cosines over a fan.

    Entry ``m`` is ``|v_start v_{start+m}|``. At vertex ``v_{start+m-1}`` the hinge
    angle is the interior angle minus the angle already used by the previous
    fan triangle.
    """
    n = len(p)
    sd = lambda q: p.sides[(start + q) % n]
    an = lambda q: p.angles[(start + q) % n]
    chords = [0.0, sd(0)]
    used = 0.0
    for m in range(2, n):
        hinge = an(m - 1) - used
        if not 0.0 < hinge < math.pi:
            raise ComparisonError("polygon is not convex from this vertex")
        c = law_of_cosines(1.0, chords[m - 1], sd(m - 1), hinge)
        chords.append(c)
        # angle at v_{m} between v_{m-1} and v_start, for the next hinge
        used = angle_from_sides(1.0, sd(m - 1), c, chords[m - 1])
    return chords


def chord_pairs(n: int):
    """Every unordered vertex pair with its cyclic span and the start of the shorter arc."""
    for i in range(n):
        for j in range(i + 1, n):
            fwd = j - i
            if fwd <= n - fwd:
                yield i, j, i, fwd
            else:
                yield i, j, j, n - fwd


@dataclass(eq=False)
class ComparisonVerdict:
    chords: list = field(default_factory=list)
    first_strict: tuple | None = None

    @property
    def all_equal(self) -> bool:
        return all(c["equal"] for c in self.chords)

    @property
    def all_geq(self) -> bool:
        return all(c["test"] >= c["model"] - TAU_POLY for c in self.chords)

    @property
    def valid(self) -> bool:
        return self.all_geq

    def to_dict(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "valid": self.valid,
                "all_equal": self.all_equal, "all_geq": self.all_geq,
                "first_strict": list(self.first_strict) if self.first_strict else None,
                "chords": self.chords}


def polygon_chord_induction(p: ComparisonPolygon, test_chords: ChordProvider,
                            tol: float = TAU_POLY) -> ComparisonVerdict:
    """Compare provider chords to the curvature -1 model, in order of increasing span.

    Each chord uses the shorter cyclic arc between its endpoints. Raises
    :class:`ComparisonViolation` at the first chord that is shorter than the
    model by more than ``tol``.
    """
    n = len(p)
    realize_polygon(p, tol)
    fans = {}
    pairs = sorted(chord_pairs(n), key=lambda q: (q[3], q[0], q[1]))
    verdict = ComparisonVerdict()
    for i, j, start, span in pairs:
        if start not in fans:
            fans[start] = model_chords(p, start)
        model = fans[start][span]
        test = float(test_chords(start, span))
        if test < model - tol:
            raise ComparisonViolation(
                f"chord ({i},{j}) span {span}: provider {test:.12g} < model {model:.12g}")
        equal = abs(test - model) <= tol
        if not equal and verdict.first_strict is None:
            verdict.first_strict = (i, j)
        verdict.chords.append({"i": i, "j": j, "span": span, "model": model,
                               "test": test, "equal": equal})
    return verdict


def random_convex_polygon(rng: np.random.Generator, sides: int, radius=(0.5, 2.0)) -> ComparisonPolygon:
    """Convex polygon inscribed in a hyperbolic circle of random radius."""
    R = rng.uniform(*radius)
    while True:
        th = np.sort(rng.uniform(0, 2 * np.pi, sides))
        gaps = np.diff(np.concatenate([th, [th[0] + 2 * np.pi]]))
        if gaps.min() > 0.2 and gaps.max() < np.pi - 0.2:
            break
    V = np.stack([np.full(sides, math.cosh(R)), math.sinh(R) * np.cos(th), math.sinh(R) * np.sin(th)], 1)
    return polygon_from_vertices(V)


def regular_right_pentagon_side() -> float:
    """Side of the regular right-angled pentagon: ``cosh s`` is the golden ratio."""
    return math.acosh((1 + math.sqrt(5)) / 2)


__all__ = [
    "TAU_POLY", "ComparisonError", "ComparisonPolygon", "ComparisonVerdict",
    "ComparisonViolation", "ModelSpace", "TriangleComparison", "angle_from_sides",
    "chord_pairs", "law_of_cosines", "model_chords", "polygon_chord_induction",
    "polygon_from_vertices", "random_convex_polygon", "realize_polygon",
    "regular_right_pentagon_side", "self_provider", "space_form_provider",
    "trace_polygon", "triangle_compare",
]
