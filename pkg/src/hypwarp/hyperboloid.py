"""Hyperbolic n-space in the hyperboloid model.

Points live on the upper sheet ``<x, x> = -1, x[0] > 0`` of Minkowski space
R^{n,1} with the form ``<x, y> = -x0*y0 + x1*y1 + ... + xn*yn``. Tangent
vectors at ``p`` are the vectors Minkowski-orthogonal to ``p``.

All objects are immutable; every operation returns new values. Points coming
out of ``exp_map`` and ``parallel_transport`` are re-projected onto the sheet so
long chains of operations do not drift off it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

TAU_POINT = 1e-9
TAU_ISO = 1e-8
DEFAULT_DIM = 3


class GeometryError(ValueError):
    """Raised when inputs violate a geometric precondition."""


class DegenerateError(GeometryError):
    """Raised when a direction is undefined (e.g. log_map(p, p))."""


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=float)
    arr.setflags(write=False)
    return arr


def mink_inner(x, y):
    """Minkowski pairing of signature (n, 1) along the last axis.

    Broadcasts like numpy, so stacks of vectors can be paired at once.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise GeometryError(
            f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    return -x[..., 0] * y[..., 0] + np.sum(x[..., 1:] * y[..., 1:], axis=-1)


def minkowski_matrix(dim: int) -> np.ndarray:
    """The Gram matrix J = diag(-1, 1, ..., 1) of size ``dim``."""
    J = np.eye(dim)
    J[0, 0] = -1.0
    return J


def project_to_sheet(x) -> np.ndarray:
    """Rescale the timelike coordinate so that <x, x> = -1 and x0 > 0."""
    x = np.array(x, dtype=float)
    x[..., 0] = np.sqrt(1.0 + np.sum(x[..., 1:] ** 2, axis=-1))
    return x


def project_to_tangent(base, v) -> np.ndarray:
    """Remove the component of ``v`` along the point ``base``."""
    base = np.asarray(base, dtype=float)
    v = np.asarray(v, dtype=float)
    return v + mink_inner(v, base)[..., None] * base


def _point_scale(x: np.ndarray) -> float:
    # rounding in <x, x> grows like x0**2
    return max(1.0, float(x[0]) ** 2)


@dataclass(frozen=True, eq=False)
class HPoint:
    """A point of H^n stored by its hyperboloid coordinates."""

    vec: np.ndarray

    def __post_init__(self):
        vec = _frozen(self.vec)
        if vec.ndim != 1 or vec.shape[0] < 3:
            raise GeometryError(f"expected a vector of length >= 3, got shape {vec.shape}")
        if vec[0] <= 0:
            raise GeometryError("point is not on the upper sheet")
        defect = abs(mink_inner(vec, vec) + 1.0)
        if defect > TAU_POINT * _point_scale(vec):
            raise GeometryError(f"<p,p> = -1 violated by {defect:.3e}")
        object.__setattr__(self, "vec", vec)

    @property
    def n(self) -> int:
        return self.vec.shape[0] - 1

    @classmethod
    def basepoint(cls, n: int = DEFAULT_DIM) -> "HPoint":
        e = np.zeros(n + 1)
        e[0] = 1.0
        return cls(e)

    @classmethod
    def from_spatial(cls, xs) -> "HPoint":
        """Lift spatial coordinates (x1..xn) onto the sheet."""
        xs = np.asarray(xs, dtype=float)
        return cls(project_to_sheet(np.concatenate([[0.0], xs])))

    @classmethod
    def projected(cls, x) -> "HPoint":
        """Normalize a timelike vector (either sheet) onto the upper sheet."""
        x = np.asarray(x, dtype=float)
        q = mink_inner(x, x)
        if not q < 0:
            raise GeometryError("vector is not timelike")
        x = x / np.sqrt(-q)
        if x[0] < 0:
            x = -x
        return cls(project_to_sheet(x))

    def __repr__(self):
        return f"HPoint({np.array2string(self.vec, precision=6)})"


@dataclass(frozen=True, eq=False)
class HTangent:
    """A tangent vector ``dir`` at the point ``base``."""

    base: HPoint
    dir: np.ndarray

    def __post_init__(self):
        d = _frozen(self.dir)
        if d.shape != self.base.vec.shape:
            raise GeometryError("tangent and base point differ in dimension")
        scale = max(1.0, float(np.linalg.norm(self.base.vec) * np.linalg.norm(d)))
        if abs(mink_inner(self.base.vec, d)) > TAU_POINT * scale:
            raise GeometryError("vector is not tangent to its base point")
        object.__setattr__(self, "dir", d)

    @classmethod
    def projected(cls, base: HPoint, v) -> "HTangent":
        return cls(base, project_to_tangent(base.vec, v))

    @property
    def norm(self) -> float:
        return float(np.sqrt(max(mink_inner(self.dir, self.dir), 0.0)))

    @property
    def is_unit(self) -> bool:
        scale = max(1.0, float(np.max(np.abs(self.dir))) ** 2)
        return abs(mink_inner(self.dir, self.dir) - 1.0) <= TAU_POINT * scale

    def normalized(self) -> "HTangent":
        nrm = self.norm
        if nrm <= TAU_POINT:
            raise DegenerateError("cannot normalize a zero tangent vector")
        return HTangent(self.base, self.dir / nrm)

    def __neg__(self) -> "HTangent":
        return HTangent(self.base, -self.dir)

    def __repr__(self):
        return f"HTangent(base={self.base!r}, dir={np.array2string(self.dir, precision=6)})"


@dataclass(frozen=True, eq=False)
class Isometry:
    """An element of O+(n, 1) acting linearly on hyperboloid coordinates."""

    matrix: np.ndarray

    def __post_init__(self):
        M = _frozen(self.matrix)
        if M.ndim != 2 or M.shape[0] != M.shape[1]:
            raise GeometryError("isometry matrix must be square")
        J = minkowski_matrix(M.shape[0])
        scale = max(1.0, float(np.max(np.abs(M))) ** 2)
        defect = float(np.max(np.abs(M.T @ J @ M - J)))
        if defect > TAU_ISO * scale:
            raise GeometryError(f"matrix does not preserve the Minkowski form (defect {defect:.3e})")
        if M[0, 0] <= 0:
            raise GeometryError("matrix swaps the sheets of the hyperboloid")
        object.__setattr__(self, "matrix", M)

    @property
    def n(self) -> int:
        return self.matrix.shape[0] - 1

    @classmethod
    def identity(cls, n: int = DEFAULT_DIM) -> "Isometry":
        return cls(np.eye(n + 1))

    @classmethod
    def reflection(cls, normal) -> "Isometry":
        """Reflection x -> x - 2<x,u>u in the hyperplane with unit spacelike normal u."""
        u = np.asarray(normal, dtype=float)
        J = minkowski_matrix(u.shape[0])
        return cls(np.eye(u.shape[0]) - 2.0 * np.outer(u, J @ u))

    def inverse(self) -> "Isometry":
        J = minkowski_matrix(self.matrix.shape[0])
        return Isometry(J @ self.matrix.T @ J)

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.matrix @ other.matrix)

    def apply_vec(self, x) -> np.ndarray:
        return np.asarray(x, dtype=float) @ self.matrix.T

    def __call__(self, obj):
        """Apply to an HPoint, HTangent, GeodesicSegment, Geodesic or raw vector(s)."""
        if isinstance(obj, HPoint):
            return HPoint(project_to_sheet(self.matrix @ obj.vec))
        if isinstance(obj, HTangent):
            base = self(obj.base)
            return HTangent(base, project_to_tangent(base.vec, self.matrix @ obj.dir))
        if isinstance(obj, GeodesicSegment):
            return GeodesicSegment(self(obj.start), self(obj.end), obj.length)
        if isinstance(obj, Geodesic):
            return Geodesic(self(obj.tangent))
        return self.apply_vec(obj)


@dataclass(frozen=True, eq=False)
class GeodesicSegment:
    start: HPoint
    end: HPoint
    length: float

    def __post_init__(self):
        if self.length < 0:
            raise GeometryError("segment length must be non-negative")
        d = dist(self.start, self.end)
        scale = max(1.0, d, _point_scale(self.start.vec), _point_scale(self.end.vec))
        if abs(d - self.length) > TAU_POINT * scale:
            raise GeometryError(f"segment length {self.length} != dist {d}")

    @classmethod
    def between(cls, p: HPoint, q: HPoint) -> "GeodesicSegment":
        return cls(p, q, dist(p, q))

    def point_at(self, s: float) -> HPoint:
        if self.length == 0.0:
            return self.start
        return exp_map(log_map(self.start, self.end), s)


@dataclass(frozen=True, eq=False)
class Geodesic:
    """A complete unit-speed geodesic s -> cosh(s) p + sinh(s) v."""

    tangent: HTangent

    def __post_init__(self):
        if not self.tangent.is_unit:
            raise GeometryError("geodesic needs a unit tangent")

    @classmethod
    def through(cls, p: HPoint, q: HPoint) -> "Geodesic":
        return cls(log_map(p, q))

    @property
    def base(self) -> HPoint:
        return self.tangent.base

    @property
    def n(self) -> int:
        return self.base.n

    def point_at(self, s: float) -> HPoint:
        return exp_map(self.tangent, s)

    def tangent_at(self, s: float) -> HTangent:
        p, v = self.tangent.base.vec, self.tangent.dir
        x = project_to_sheet(np.cosh(s) * p + np.sinh(s) * v)
        w = project_to_tangent(x, np.sinh(s) * p + np.cosh(s) * v)
        return HTangent(HPoint(x), w / np.sqrt(mink_inner(w, w)))

    def ideal_endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Null vectors (backward, forward) representing the two ends."""
        p, v = self.tangent.base.vec, self.tangent.dir
        return p - v, p + v

    def reparametrized(self, s: float) -> "Geodesic":
        """Same geodesic with arc-length origin moved to parameter ``s``."""
        return Geodesic(self.tangent_at(s))


def dist(p: HPoint, q: HPoint) -> float:
    """Hyperbolic distance arccosh(-<p, q>).

    Evaluated as 2 asinh(|q - p| / 2), which equals arccosh(-<p,q>) exactly
    but keeps full precision for nearby points; the Minkowski norm of the
    chord is clamped at zero.
    """
    if p.n != q.n:
        raise GeometryError("points live in different dimensions")
    d = q.vec - p.vec
    chord2 = max(float(mink_inner(d, d)), 0.0)
    return 2.0 * float(np.arcsinh(np.sqrt(chord2) / 2.0))


def exp_map(v: HTangent, t: float) -> HPoint:
    """Follow the unit-speed geodesic with initial velocity ``v`` for time ``t``."""
    if not v.is_unit:
        raise GeometryError("exp_map needs a unit tangent vector")
    if t == 0:
        return v.base
    x = np.cosh(t) * v.base.vec + np.sinh(t) * v.dir
    return HPoint(project_to_sheet(x))


def log_map(p: HPoint, q: HPoint) -> HTangent:
    """Unit tangent at ``p`` pointing toward ``q``.

    Raises DegenerateError when the points coincide within TAU_POINT.
    """
    if p.n != q.n:
        raise GeometryError("points live in different dimensions")
    d = q.vec - p.vec
    m = max(float(mink_inner(d, d)), 0.0)
    if 2.0 * math.asinh(math.sqrt(m) / 2.0) <= TAU_POINT:
        raise DegenerateError("log_map of coincident points has no direction")
    # q + <p,q> p, written so that the small-distance case does not cancel.
    # Normalizing by sinh(dist) from the same chord (instead of re-projecting
    # and using the Minkowski norm) keeps exp_map(log_map(p, q), dist(p, q))
    # equal to q even though float points sit slightly off the sheet.
    u = d - 0.5 * m * p.vec
    return HTangent(p, u / (math.sqrt(m) * math.sqrt(1.0 + 0.25 * m)))


def angle(u: HTangent, v: HTangent) -> float:
    """Angle in [0, pi] between two tangent vectors at the same point."""
    if dist(u.base, v.base) > TAU_POINT:
        raise GeometryError("angle between tangents at different base points")
    c = mink_inner(u.dir, v.dir) / (u.norm * v.norm)
    return float(np.arccos(np.clip(c, -1.0, 1.0)))


def parallel_transport(v: HTangent, along: GeodesicSegment) -> HTangent:
    """Transport ``v`` from ``along.start`` to ``along.end`` along the geodesic.

    Uses the closed form w + <q,w>/(1 - <p,q>) (p + q), the restriction of the
    Lorentz transvection carrying p to q.
    """
    p, q = along.start.vec, along.end.vec
    if dist(v.base, along.start) > TAU_POINT:
        raise GeometryError("vector is not based at the start of the segment")
    w = v.dir
    coef = mink_inner(q, w) / (1.0 - mink_inner(p, q))
    out = project_to_tangent(q, w + coef * (p + q))
    return HTangent(along.end, out)


def _frame_matrix(p: HPoint, frame: Sequence[HTangent]) -> np.ndarray:
    if len(frame) != p.n:
        raise GeometryError(f"frame needs {p.n} vectors, got {len(frame)}")
    for e in frame:
        if dist(e.base, p) > TAU_POINT:
            raise GeometryError("frame vector not based at the frame point")
    A = np.column_stack([p.vec] + [e.dir for e in frame])
    J = minkowski_matrix(p.n + 1)
    scale = max(1.0, float(np.max(np.abs(A))) ** 2)
    if np.max(np.abs(A.T @ J @ A - J)) > TAU_ISO * scale:
        raise GeometryError("frame is not orthonormal")
    return A


def isometry_from_frames(p: HPoint, frame_p: Sequence[HTangent],
                         q: HPoint, frame_q: Sequence[HTangent]) -> Isometry:
    """The unique isometry taking ``p`` to ``q`` and ``frame_p`` to ``frame_q``."""
    A = _frame_matrix(p, frame_p)
    B = _frame_matrix(q, frame_q)
    J = minkowski_matrix(p.n + 1)
    # A^-1 = J A^T J because the columns of A are Minkowski-orthonormal
    return Isometry(B @ J @ A.T @ J)


def orthonormalize(p: HPoint, vectors) -> list[HTangent]:
    """Gram-Schmidt in the tangent space at ``p`` (the form is positive definite there)."""
    out: list[np.ndarray] = []
    for v in vectors:
        w = project_to_tangent(p.vec, np.asarray(getattr(v, "dir", v), dtype=float))
        for e in out:
            w = w - mink_inner(w, e) * e
        w = project_to_tangent(p.vec, w)
        nrm2 = mink_inner(w, w)
        if nrm2 <= TAU_POINT ** 2:
            raise DegenerateError("vectors are linearly dependent")
        out.append(w / np.sqrt(nrm2))
    return [HTangent(p, e) for e in out]


def complete_frame(p: HPoint, vectors) -> list[HTangent]:
    """Orthonormal frame at ``p`` starting with ``vectors``, completed from the axes.

    The given vectors must be independent; axis candidates that are dependent
    on what is already there are skipped.
    """
    out = orthonormalize(p, vectors)
    for e in np.eye(p.n + 1)[1:]:
        if len(out) == p.n:
            break
        w = project_to_tangent(p.vec, e)
        for f in out:
            w = w - mink_inner(w, f.dir) * f.dir
        if mink_inner(w, w) > 1e-6 * max(1.0, p.vec[0] ** 2):
            out += orthonormalize(p, [f.dir for f in out] + [w])[len(out):]
    return out


def standard_frame(p: HPoint) -> list[HTangent]:
    """Coordinate frame at the basepoint transported radially to ``p``."""
    o = HPoint.basepoint(p.n)
    frame = [HTangent(o, np.eye(p.n + 1)[i]) for i in range(1, p.n + 1)]
    if dist(o, p) <= TAU_POINT:
        return frame
    seg = GeodesicSegment.between(o, p)
    return [parallel_transport(e, seg) for e in frame]


def random_point(rng: np.random.Generator, n: int = DEFAULT_DIM,
                 radius: float = 3.0) -> HPoint:
    """A point at distance uniform in [0, radius] from the basepoint."""
    o = HPoint.basepoint(n)
    return exp_map(random_unit_tangent(rng, o), rng.uniform(0.0, radius))


def random_unit_tangent(rng: np.random.Generator, p: HPoint) -> HTangent:
    frame = standard_frame(p)
    c = rng.normal(size=p.n)
    c /= np.linalg.norm(c)
    return HTangent.projected(p, sum(ci * e.dir for ci, e in zip(c, frame))).normalized()


def random_frame(rng: np.random.Generator, p: HPoint) -> list[HTangent]:
    frame = standard_frame(p)
    Q, _ = np.linalg.qr(rng.normal(size=(p.n, p.n)))
    return orthonormalize(p, [sum(Q[i, j] * frame[i].dir for i in range(p.n))
                              for j in range(p.n)])


def random_isometry(rng: np.random.Generator, n: int = DEFAULT_DIM,
                    radius: float = 3.0) -> Isometry:
    o = HPoint.basepoint(n)
    q = random_point(rng, n, radius)
    return isometry_from_frames(o, standard_frame(o), q, random_frame(rng, q))


def dist_arrays(X, Y) -> np.ndarray:
    """Vectorized ``dist`` over stacks of hyperboloid coordinates."""
    D = np.asarray(Y, dtype=float) - np.asarray(X, dtype=float)
    return 2.0 * np.arcsinh(np.sqrt(np.maximum(mink_inner(D, D), 0.0)) / 2.0)


def log_dir_arrays(X, Y) -> np.ndarray:
    """Vectorized unit ``log_map`` directions from X toward Y (no degeneracy check)."""
    X = np.asarray(X, dtype=float)
    D = np.asarray(Y, dtype=float) - X
    U = D - 0.5 * mink_inner(D, D)[..., None] * X
    U = project_to_tangent(X, U)
    return U / np.sqrt(mink_inner(U, U))[..., None]
