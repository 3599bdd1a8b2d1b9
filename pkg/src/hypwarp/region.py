"""Totally geodesic hyperplanes and hypercubes bounded by them.

A hyperplane is stored by a unit spacelike normal ``u``; it is the zero set
of ``x -> <x, u>`` on the hyperboloid and ``u`` points to its positive side.
Cube faces always carry *outward* normals, so the solid cube is the set where
every face functional is <= 0.

Vertices of an :class:`HCube` are indexed by an integer whose bit ``i`` says
which face of axis ``i`` the vertex lies on (0 = minus face, 1 = plus face).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np

from .hyperboloid import (
    TAU_POINT,
    Geodesic,
    GeodesicSegment,
    GeometryError,
    HPoint,
    HTangent,
    Isometry,
    _frame_matrix,
    _frozen,
    dist,
    dist_arrays,
    exp_map,
    log_dir_arrays,
    log_map,
    mink_inner,
    minkowski_matrix,
    parallel_transport,
    project_to_sheet,
)


class CubeError(GeometryError):
    """Raised when face data do not bound an embedded hypercube."""


@dataclass(frozen=True, eq=False)
class Hyperplane:
    normal: np.ndarray

    def __post_init__(self):
        u = _frozen(self.normal)
        scale = max(1.0, float(np.max(np.abs(u))) ** 2)
        if abs(mink_inner(u, u) - 1.0) > TAU_POINT * scale:
            raise GeometryError("hyperplane normal must be unit spacelike")
        object.__setattr__(self, "normal", u)

    @classmethod
    def from_normal(cls, u) -> "Hyperplane":
        u = np.asarray(u, dtype=float)
        q = mink_inner(u, u)
        if not q > 0:
            raise GeometryError("normal vector is not spacelike")
        return cls(u / np.sqrt(q))

    @property
    def n(self) -> int:
        return self.normal.shape[0] - 1

    def flipped(self) -> "Hyperplane":
        return Hyperplane(-self.normal)

    def contains(self, p: HPoint, tol: float = TAU_POINT) -> bool:
        return abs(signed_dist(p, self)) <= tol

    def reflection(self) -> Isometry:
        return Isometry.reflection(self.normal)

    def same_as(self, other: "Hyperplane", tol: float = TAU_POINT) -> bool:
        """True if the two normals agree up to sign."""
        a, b = self.normal, other.normal
        return bool(min(np.max(np.abs(a - b)), np.max(np.abs(a + b))) <= tol)


def hyperplane_through(p: HPoint, normal_dir: HTangent) -> Hyperplane:
    """The geodesic hyperplane through ``p`` orthogonal to ``normal_dir``."""
    if dist(p, normal_dir.base) > TAU_POINT:
        raise GeometryError("normal direction is not based at p")
    if not normal_dir.is_unit:
        raise GeometryError("normal direction must be a unit vector")
    return Hyperplane.from_normal(normal_dir.dir)


def signed_dist(p: HPoint, H: Hyperplane) -> float:
    """Signed distance, positive on the side ``H.normal`` points to."""
    return float(np.arcsinh(mink_inner(p.vec, H.normal)))


def hyperplane_gap(a: Hyperplane, b: Hyperplane) -> float:
    """Distance between two hyperplanes (0 if they meet or are asymptotic)."""
    c = abs(float(mink_inner(a.normal, b.normal)))
    return float(np.arccosh(c)) if c > 1.0 else 0.0


def common_perpendicular(a: Hyperplane, b: Hyperplane) -> tuple[HPoint, HPoint]:
    """Feet on ``a`` and ``b`` of the shortest segment between ultraparallel hyperplanes."""
    u, v = a.normal, b.normal
    c = float(mink_inner(u, v))
    if abs(c) <= 1.0 + TAU_POINT:
        raise GeometryError("hyperplanes are not ultraparallel")
    # foot on a: the timelike unit vector in span(u, v) orthogonal to u
    pa = HPoint.projected(v - c * u)
    pb = HPoint.projected(u - c * v)
    return pa, pb


@dataclass(frozen=True, eq=False)
class HCube:
    """A solid hypercube with totally geodesic faces.

    ``faces[i, s]`` is the outward unit normal of the face on axis ``i`` and
    side ``s`` (0 minus, 1 plus); ``vertices[k]`` is the vertex whose sign
    pattern is the binary expansion of ``k``.
    """

    faces: np.ndarray
    vertices: np.ndarray
    edges: tuple = field(repr=False)

    @property
    def n(self) -> int:
        return self.faces.shape[0]

    @classmethod
    def from_faces(cls, faces) -> "HCube":
        faces = _as_face_array(faces)
        verts = _cube_vertices(faces)
        cube = cls(_frozen(faces), _frozen(verts), _edge_list(faces.shape[0]))
        _check_embedded(cube)
        return cube

    @classmethod
    def from_hyperplane_pairs(cls, pairs: Sequence[tuple[Hyperplane, Hyperplane]]) -> "HCube":
        """Build a cube from n pairs of ultraparallel hyperplanes, fixing orientations."""
        faces = []
        for a, b in pairs:
            faces.append(_orient_slab(a.normal, b.normal))
        return cls.from_faces(np.array(faces))

    def face(self, axis: int, side: int) -> Hyperplane:
        return Hyperplane(self.faces[axis, side])

    def face_list(self) -> list[tuple[int, int]]:
        return [(i, s) for i in range(self.n) for s in (0, 1)]

    def vertex(self, k: int) -> HPoint:
        return HPoint(self.vertices[k])

    def face_vertex_ids(self, axis: int, side: int) -> list[int]:
        return [k for k in range(2 ** self.n) if (k >> axis) & 1 == side]

    def contains(self, p: HPoint, tol: float = TAU_POINT) -> bool:
        vals = mink_inner(self.faces, p.vec)
        return bool(np.all(vals <= tol * max(1.0, p.vec[0])))

    def center(self) -> HPoint:
        return HPoint.projected(self.vertices.sum(axis=0))

    def transformed(self, g: Isometry) -> "HCube":
        faces = g.apply_vec(self.faces)
        return HCube(_frozen(faces), _frozen(project_to_sheet(g.apply_vec(self.vertices))),
                     self.edges)


def _as_face_array(faces) -> np.ndarray:
    F = np.array(faces, dtype=float)
    if F.ndim == 2:
        if F.shape[0] % 2:
            raise CubeError("need an even number of face normals")
        F = F.reshape(F.shape[0] // 2, 2, F.shape[1])
    if F.ndim != 3 or F.shape[1] != 2 or F.shape[2] != F.shape[0] + 1:
        raise CubeError(f"face array has shape {F.shape}, expected (n, 2, n+1)")
    q = mink_inner(F, F)
    if np.any(q <= 0):
        raise CubeError("face normals must be spacelike")
    return F / np.sqrt(q)[..., None]


def _orient_slab(u, v) -> np.ndarray:
    """Orient two ultraparallel normals so both point out of the slab between them."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    c = mink_inner(u, v)
    if abs(c) <= 1.0 + TAU_POINT:
        raise CubeError("opposite faces must lie in disjoint hyperplanes")
    if c > 0:
        v = -v
    # the midpoint of the common perpendicular is inside the slab
    w = u + v
    mid = w / np.sqrt(-mink_inner(w, w))
    if mid[0] < 0:
        mid = -mid
    if mink_inner(mid, u) > 0:
        u, v = -u, -v
    return np.array([u, v])


@lru_cache(maxsize=None)
def _edge_list(n: int) -> tuple:
    return tuple((k, k | (1 << i), i) for k in range(2 ** n) for i in range(n)
                 if not (k >> i) & 1)


@lru_cache(maxsize=None)
def _sign_index(n: int) -> np.ndarray:
    """bits[k, i] = side of vertex k on axis i."""
    return np.array([[(k >> i) & 1 for i in range(n)] for k in range(2 ** n)])


def _cube_vertices(F: np.ndarray) -> np.ndarray:
    n = F.shape[0]
    bits = _sign_index(n)
    J = minkowski_matrix(n + 1)
    rows = F[np.arange(n)[None, :], bits]            # (2^n, n, n+1)
    A = rows @ J
    _, s, vh = np.linalg.svd(A)
    if np.any(s[:, -1] <= 1e-12 * s[:, 0]):
        raise CubeError("face normals at a vertex are linearly dependent")
    w = vh[:, -1, :]
    q = mink_inner(w, w)
    if np.any(q >= -TAU_POINT):
        raise CubeError("faces do not meet in H^n (vertex would be ideal or beyond)")
    V = w / np.sqrt(-q)[:, None]
    V = V * np.sign(V[:, :1])
    return project_to_sheet(V)


def _check_embedded(c: HCube) -> None:
    n = c.n
    F, V = c.faces, c.vertices
    bits = _sign_index(n)
    for i in range(n):
        if mink_inner(F[i, 0], F[i, 1]) >= -1.0 - TAU_POINT:
            raise CubeError(f"opposite faces on axis {i} are not disjoint")
    vals = np.einsum("ab,ijb->aij", V * np.array([-1.0] + [1.0] * n), F)  # <v_k, F[i,s]>
    scale = np.maximum(1.0, V[:, 0])[:, None, None]
    own = np.take_along_axis(vals, bits[:, :, None], axis=2)[..., 0]
    other = np.take_along_axis(vals, 1 - bits[:, :, None], axis=2)[..., 0]
    if np.any(np.abs(own) > TAU_POINT * scale[..., 0]):
        raise CubeError("a vertex does not lie on its defining faces")
    if np.any(other >= -TAU_POINT * scale[..., 0]):
        raise CubeError("a vertex lies outside a non-incident face (cube not embedded)")
    D = dist_arrays(V[:, None, :], V[None, :, :])
    if np.min(D + np.eye(len(V)) * 1e9) <= TAU_POINT:
        raise CubeError("coincident vertices")
    centroid = HPoint.projected(V.sum(axis=0))
    if np.any(mink_inner(F, centroid.vec) >= 0):
        raise CubeError("cube interior is empty")


def box_model(center: HPoint, frame: Sequence[HTangent], eps: float) -> HCube:
    """The model cube with faces orthogonal to each frame axis at distance eps.

    Raises CubeError when eps is too large for the faces to bound an
    embedded cube (see :func:`eps_max`).
    """
    if not eps > 0:
        raise CubeError("eps must be positive")
    _frame_matrix(center, frame)
    faces = []
    for e in frame:
        pair = []
        for s in (-1.0, 1.0):
            out = HTangent(center, s * e.dir)
            q = exp_map(out, eps)
            seg = GeodesicSegment(center, q, eps)
            pair.append(hyperplane_through(q, parallel_transport(out, seg)).normal)
        faces.append(pair)
    return HCube.from_faces(np.array(faces))


def eps_max(n: int, tol: float = 1e-12) -> float:
    """Largest eps for which Box_model(eps) in H^n is an embedded cube, by bisection."""
    o = HPoint.basepoint(n)
    frame = [HTangent(o, np.eye(n + 1)[i]) for i in range(1, n + 1)]

    def ok(e):
        try:
            box_model(o, frame, e)
            return True
        except CubeError:
            return False

    lo, hi = 0.0, 1.0
    while ok(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if ok(mid) else (lo, mid)
    return lo


@dataclass(frozen=True, eq=False)
class CubeShape:
    """Edge lengths and vertex angles of a cube.

    ``edge_lengths[k, i]`` is the length of the edge leaving vertex ``k`` along
    axis ``i``; ``vertex_angles[k, i, j]`` the angle at vertex ``k`` between
    the edges along axes ``i`` and ``j`` (zero on the diagonal).
    """

    edge_lengths: np.ndarray
    vertex_angles: np.ndarray

    def edges(self) -> list[float]:
        n = self.edge_lengths.shape[1]
        return [float(self.edge_lengths[a, i]) for a, _, i in _edge_list(n)]

    def angles(self) -> list[float]:
        n = self.edge_lengths.shape[1]
        return [float(self.vertex_angles[k, i, j]) for k in range(2 ** n)
                for i in range(n) for j in range(i + 1, n)]


def cube_shape(c: HCube) -> CubeShape:
    n = c.n
    V = c.vertices
    idx = np.arange(2 ** n)
    nbr = idx[:, None] ^ (1 << np.arange(n))[None, :]      # (2^n, n)
    L = dist_arrays(V[:, None, :], V[nbr])
    U = log_dir_arrays(np.repeat(V[:, None, :], n, axis=1), V[nbr])   # (2^n, n, n+1)
    G = np.einsum("kia,kja->kij", U * np.array([-1.0] + [1.0] * n), U)
    A = np.arccos(np.clip(G, -1.0, 1.0))
    A[:, np.arange(n), np.arange(n)] = 0.0
    return CubeShape(_frozen(L), _frozen(A))


@lru_cache(maxsize=None)
def _labelings(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All automorphisms of the n-cube graph as (vertex map, axis map) arrays."""
    vmaps, amaps = [], []
    idx = np.arange(2 ** n)
    for perm in itertools.permutations(range(n)):
        for mask in range(2 ** n):
            img = np.zeros_like(idx)
            for i in range(n):
                bit = ((idx >> i) & 1) ^ ((mask >> i) & 1)
                img |= bit << perm[i]
            vmaps.append(img)
            amaps.append(perm)
    return np.array(vmaps), np.array(amaps)


def delta_close(a: HCube, b: HCube) -> float:
    """Smallest, over relabelings, of the largest edge-length or angle discrepancy.

    Relabelings range over all automorphisms of the hypercube graph, including
    orientation-reversing ones. Two cubes are delta-close iff the result is
    below delta.
    """
    if a.n != b.n:
        raise GeometryError("cubes have different dimensions")
    return delta_close_shapes(cube_shape(a), cube_shape(b))


def delta_close_shapes(sa: CubeShape, sb: CubeShape) -> float:
    n = sa.edge_lengths.shape[1]
    vmap, amap = _labelings(n)                               # (G, 2^n), (G, n)
    Lb = sb.edge_lengths[vmap[:, :, None], amap[:, None, :]]  # (G, 2^n, n)
    dl = np.abs(sa.edge_lengths[None] - Lb).max(axis=(1, 2))
    Ab = sb.vertex_angles[vmap[:, :, None, None], amap[:, None, :, None], amap[:, None, None, :]]
    da = np.abs(sa.vertex_angles[None] - Ab).max(axis=(1, 2, 3))
    return float(np.min(np.maximum(dl, da)))


@dataclass(frozen=True)
class Hit:
    """Where a geodesic crosses a hyperplane: point, arc parameter, incidence angle.

    The incidence angle is measured between the geodesic and the hyperplane,
    so it lies in [0, pi/2] with pi/2 meaning orthogonal.
    """

    point: HPoint
    s: float
    angle: float


def geodesic_hits_hyperplane(gamma, H: Hyperplane) -> Hit | None:
    """Intersection of a geodesic (complete or segment) with a hyperplane.

    For a complete geodesic the test is on the ideal endpoints: it crosses
    ``H`` iff their pairings with the normal have opposite signs. Raises
    GeometryError when the geodesic lies inside ``H``.
    """
    if isinstance(gamma, GeodesicSegment):
        if gamma.length <= TAU_POINT:
            raise GeometryError("degenerate segment")
        line = Geodesic(log_map(gamma.start, gamma.end))
        lo, hi = 0.0, gamma.length
    elif isinstance(gamma, Geodesic):
        line, lo, hi = gamma, -np.inf, np.inf
    else:
        raise TypeError("expected a Geodesic or GeodesicSegment")
    p, v = line.tangent.base.vec, line.tangent.dir
    u = H.normal
    a = float(mink_inner(p, u))
    b = float(mink_inner(v, u))
    scale = max(1.0, float(np.max(np.abs(u))) * float(np.max(np.abs(p))))
    if abs(a) <= TAU_POINT * scale and abs(b) <= TAU_POINT * scale:
        raise GeometryError("geodesic is contained in the hyperplane")
    minus, plus = a - b, a + b
    if not minus * plus < 0:
        return None
    s = float(np.arctanh(-a / b))
    if s < lo - TAU_POINT or s > hi + TAU_POINT:
        return None
    t = line.tangent_at(s)
    sin_inc = abs(float(mink_inner(t.dir, u)))
    return Hit(t.base, s, float(np.arcsin(min(1.0, sin_inc))))


def cube_to_dict(c: HCube) -> dict:
    """JSON record {n, faces, vertices}; faces ordered (0,-), (0,+), (1,-), ..."""
    return {
        "n": c.n,
        "faces": c.faces.reshape(2 * c.n, c.n + 1).tolist(),
        "vertices": c.vertices.tolist(),
    }


def cube_from_dict(d: dict, tol: float = 1e-8) -> HCube:
    try:
        n = int(d["n"])
        faces = np.array(d["faces"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise CubeError(f"malformed cube record: {exc}") from exc
    if faces.shape != (2 * n, n + 1):
        raise CubeError(f"expected {2 * n} faces of length {n + 1}")
    cube = HCube.from_faces(faces)
    if "vertices" in d:
        V = np.array(d["vertices"], dtype=float)
        if V.shape != cube.vertices.shape or np.max(dist_arrays(V, cube.vertices)) > tol:
            raise CubeError("stored vertices do not match the faces")
    return cube
