"""Density of tangent hyperplane samples and enclosure of geodesics by cubes.

Tangent (n-1)-planes are compared in the Grassmann bundle with the metric
``sqrt(d_base^2 + sum theta_i^2)``: the plane at one base is carried to the
other by parallel transport and the principal angles are measured there.

Enclosure follows the cube-chain construction along a geodesic: each cube
in the chain is assembled from hyperplanes of a finite arrangement, crosses
the geodesic through exactly two opposite faces near their centers and
nearly orthogonally, and consecutive cubes interlock.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import subspace_angles

from .hyperboloid import (
    TAU_POINT,
    GeodesicSegment,
    complete_frame,
    Geodesic,
    GeometryError,
    HPoint,
    HTangent,
    dist,
    dist_arrays,
    exp_map,
    log_dir_arrays,
    mink_inner,
    orthonormalize,
    parallel_transport,
    standard_frame,
)
from .region import (
    CubeError,
    HCube,
    Hyperplane,
    box_model,
    common_perpendicular,
    cube_shape,
    cube_to_dict,
    delta_close_shapes,
    hyperplane_gap,
)

SCHEMA_VERSION = 1


class DistributionError(GeometryError):
    pass


# ---------------------------------------------------------------------------
# Grassmann samples


@dataclass(frozen=True, eq=False)
class PlaneSample:
    """An unoriented tangent (n-1)-plane spanned by an orthonormal frame at ``base``."""

    base: HPoint
    plane: tuple

    def __post_init__(self):
        vecs = tuple(self.plane)
        if len(vecs) != self.base.n - 1:
            raise DistributionError(f"need {self.base.n - 1} spanning vectors")
        A = np.array([v.dir for v in vecs])
        if any(dist(v.base, self.base) > TAU_POINT for v in vecs):
            raise DistributionError("spanning vectors are not based at the sample point")
        G = mink_inner(A[:, None, :], A[None, :, :])
        if np.max(np.abs(G - np.eye(len(vecs)))) > TAU_POINT:
            raise DistributionError("plane frame is not orthonormal")
        object.__setattr__(self, "plane", vecs)

    @classmethod
    def from_normal(cls, normal: HTangent) -> "PlaneSample":
        """The tangent plane orthogonal to ``normal`` at its base point."""
        frame = complete_frame(normal.base, [normal.dir])
        return cls(normal.base, tuple(frame[1:]))

    def normal(self) -> HTangent:
        return complete_frame(self.base, [v.dir for v in self.plane])[-1]


def _tangent_coords(p: HPoint, vecs) -> np.ndarray:
    """Coordinates of tangent vectors at ``p`` in the standard orthonormal frame."""
    F = np.array([e.dir for e in standard_frame(p)])
    V = np.array([v.dir if isinstance(v, HTangent) else v for v in vecs])
    return mink_inner(V[:, None, :], F[None, :, :])


def grassmann_dist(a: PlaneSample, b: PlaneSample) -> float:
    """``sqrt(d_base^2 + sum theta_i^2)`` with principal angles taken after transport to ``b``."""
    if a.base.n != b.base.n:
        raise DistributionError("samples live in different dimensions")
    if np.array_equal(a.base.vec, b.base.vec) and all(
            np.array_equal(u.dir, v.dir) for u, v in zip(a.plane, b.plane)):
        return 0.0
    d = dist(a.base, b.base)
    if d <= TAU_POINT:
        moved = [HTangent.projected(b.base, v.dir) for v in a.plane]
    else:
        seg = GeodesicSegment(a.base, b.base, d)
        moved = [parallel_transport(v, seg) for v in a.plane]
    A = _tangent_coords(b.base, moved).T
    B = _tangent_coords(b.base, b.plane).T
    th = subspace_angles(A, B)
    return float(math.sqrt(d * d + float(np.sum(th ** 2))))


def eps_density(samples, probes) -> float:
    """Largest distance from a probe plane to its nearest sample plane."""
    samples = list(samples)
    if not samples:
        raise DistributionError("sample set is empty")
    worst = 0.0
    for q in probes:
        worst = max(worst, min(grassmann_dist(s, q) for s in samples))
    return worst


def fibonacci_sphere(count: int) -> np.ndarray:
    """Quasi-uniform unit vectors in R^3 (golden-angle spiral)."""
    i = np.arange(count) + 0.5
    z = 1.0 - 2.0 * i / count
    r = np.sqrt(1.0 - z * z)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def probe_grid(center: HPoint, radius: float, n_radii: int = 2, n_dirs: int = 12,
               n_normals: int = 12, seed: int = 0) -> list[PlaneSample]:
    """Probe planes on a ball grid around ``center`` times a sphere of normals.

    Base points sit at radii ``radius*k/n_radii`` along quasi-uniform
    directions. In H^3 directions and normals come from the Fibonacci sphere;
    other dimensions use seeded Gaussian directions.
    """
    n = center.n
    rng = np.random.default_rng(seed)

    def dirs(count):
        if n == 3:
            return fibonacci_sphere(count)
        D = rng.normal(size=(count, n))
        return D / np.linalg.norm(D, axis=1, keepdims=True)

    frame = np.array([e.dir for e in standard_frame(center)])
    bases = [center]
    for k in range(1, n_radii + 1):
        for d in dirs(n_dirs):
            bases.append(exp_map(HTangent(center, d @ frame), radius * k / n_radii))
    normals = dirs(n_normals)
    out = []
    for p in bases:
        F = np.array([e.dir for e in standard_frame(p)])
        for nv in normals:
            out.append(PlaneSample.from_normal(HTangent.projected(p, nv @ F)))
    return out


# ---------------------------------------------------------------------------
# arrangements


@dataclass(frozen=True, eq=False)
class Arrangement:
    hyperplanes: tuple

    def __post_init__(self):
        hs = tuple(h if isinstance(h, Hyperplane) else Hyperplane.from_normal(h)
                   for h in self.hyperplanes)
        if hs:
            U = np.array([h.normal for h in hs])
            # duplicates up to sign
            for i in range(len(U)):
                d = np.minimum(np.abs(U[i + 1:] - U[i]).max(axis=1),
                               np.abs(U[i + 1:] + U[i]).max(axis=1))
                if np.any(d <= TAU_POINT):
                    raise DistributionError(f"hyperplane {i} is duplicated")
        object.__setattr__(self, "hyperplanes", hs)

    def __len__(self):
        return len(self.hyperplanes)

    @property
    def normals(self) -> np.ndarray:
        return np.array([h.normal for h in self.hyperplanes])

    def without(self, index: int) -> "Arrangement":
        return Arrangement(self.hyperplanes[:index] + self.hyperplanes[index + 1:])

    def to_dict(self) -> dict:
        return {"normals": self.normals.tolist()}

    @classmethod
    def from_dict(cls, d) -> "Arrangement":
        normals = d["normals"] if isinstance(d, dict) else d
        return cls(tuple(np.asarray(u, float) for u in normals))


def cube_arrangement(cubes) -> Arrangement:
    """All face hyperplanes of ``cubes`` with duplicates (up to sign) merged, in order."""
    kept: list[np.ndarray] = []
    for c in cubes:
        for u in c.faces.reshape(-1, c.n + 1):
            if not any(min(np.abs(u - v).max(), np.abs(u + v).max()) <= TAU_POINT for v in kept):
                kept.append(u)
    return Arrangement(tuple(kept))


# ---------------------------------------------------------------------------
# geodesic / hyperplane incidence


@dataclass(frozen=True)
class Crossings:
    """Vectorised incidence of a complete geodesic with each hyperplane of an arrangement."""

    hits: np.ndarray     # bool: geodesic crosses the hyperplane
    s: np.ndarray        # arc parameter of the crossing (nan if none)
    angle: np.ndarray    # incidence angle in [0, pi/2] (nan if none)


def crossings(gamma: Geodesic, U: np.ndarray) -> Crossings:
    p, v = gamma.tangent.base.vec, gamma.tangent.dir
    a = mink_inner(U, p)
    b = mink_inner(U, v)
    hit = a * a < b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(hit, np.arctanh(np.clip(-a / b, -1.0, 1.0)), np.nan)
        sin_inc = np.abs(a * np.sinh(s) + b * np.cosh(s))
        ang = np.where(hit, np.arcsin(np.clip(sin_inc, 0.0, 1.0)), np.nan)
    return Crossings(hit, s, ang)


def _dist_to_planes(x: np.ndarray, U: np.ndarray) -> np.ndarray:
    return np.abs(np.arcsinh(mink_inner(U, x)))


def top_bottom(cube: HCube, gamma: Geodesic, tol: float = 1e-9):
    """Faces of ``cube`` whose hyperplane meets ``gamma`` on the cube boundary.

    Returns ``[(face, s, angle), ...]`` sorted by arc parameter.
    """
    F = cube.faces.reshape(-1, cube.n + 1)
    cr = crossings(gamma, F)
    out = []
    for idx in np.flatnonzero(cr.hits):
        x = gamma.point_at(float(cr.s[idx])).vec
        vals = mink_inner(F, x)
        vals[idx] = 0.0
        if np.all(vals <= tol * max(1.0, x[0])):
            out.append(((int(idx) // 2, int(idx) % 2), float(cr.s[idx]), float(cr.angle[idx])))
    return sorted(out, key=lambda q: q[1])


def check_enclosure(cube: HCube, gamma: Geodesic, eps: float, delta: float,
                    model: HCube | None = None) -> dict:
    """Independent check of the four enclosure conditions for one cube.

    ``model_close``: delta-close to Box_model(eps); ``two_faces``: the boundary
    meets gamma in exactly two opposite faces; ``others_miss``: the remaining
    face hyperplanes miss gamma; ``centers``: crossings within delta of the
    feet of the common perpendicular; ``angles``: crossings within delta of
    orthogonal.
    """
    if model is None:
        o = HPoint.basepoint(cube.n)
        model = box_model(o, standard_frame(o), eps)
    res = {"model_close": delta_close_shapes(cube_shape(cube), cube_shape(model)) < delta}
    tb = top_bottom(cube, gamma)
    two = len(tb) == 2 and tb[0][0][0] == tb[1][0][0] and tb[1][1] > tb[0][1]
    res["two_faces"] = bool(two)
    if not two:
        res.update(others_miss=False, centers=False, angles=False, s_bottom=None, s_top=None)
        return res
    axis = tb[0][0][0]
    others = np.array([cube.faces[i, s] for i in range(cube.n) if i != axis for s in (0, 1)])
    res["others_miss"] = bool(not np.any(crossings(gamma, others).hits))
    fb, ft = common_perpendicular(cube.face(*tb[0][0]), cube.face(*tb[1][0]))
    pb, pt = gamma.point_at(tb[0][1]), gamma.point_at(tb[1][1])
    res["centers"] = bool(dist(pb, fb) < delta and dist(pt, ft) < delta)
    res["angles"] = bool(all(q[2] >= math.pi / 2 - delta for q in tb))
    res["s_bottom"], res["s_top"] = tb[0][1], tb[1][1]
    return res


def enclosure_ok(res: dict) -> bool:
    return all(res[k] for k in ("model_close", "two_faces", "others_miss", "centers", "angles"))


# ---------------------------------------------------------------------------
# cube search


def _model(n: int, eps: float) -> HCube:
    o = HPoint.basepoint(n)
    return box_model(o, standard_frame(o), eps)


def _shape_windows(model: HCube, delta: float):
    """Open windows for edge lengths and vertex angles of cubes delta-close to ``model``.

    Box_model cubes have one edge length and one vertex angle, so a cube is
    delta-close to the model iff every edge and angle lies in these windows.
    """
    sh = cube_shape(model)
    return ((float(sh.edge_lengths.min()) - delta, float(sh.edge_lengths.max()) + delta),
            (float(sh.vertex_angles.min()) - delta, float(sh.vertex_angles.max()) + delta))


def _adjacent_bound(n: int, angles) -> float:
    """Bound on ``|<u_a, u_b>|`` for adjacent faces when all vertex angles lie in ``angles``.

    The link of a vertex is a spherical simplex whose edge lengths are the
    vertex angles and whose dihedral angles are the face dihedrals; the face
    normals are the dual basis of the edge Gram matrix ``G = I + E`` with
    ``|E_ij| <= c``. A Neumann series bounds the normalized off-diagonal
    entries of ``G^-1``. Returns 1 (no pruning) when the series does not apply.
    """
    lo, hi = max(angles[0], 0.0), min(angles[1], math.pi)
    c = max(abs(math.cos(lo)), abs(math.cos(hi)))
    if lo <= math.pi / 2 <= hi:
        c = max(c, 0.0)
    r = (n - 1) * c
    if r >= 0.5:
        return 1.0
    off = c / (1 - r)
    diag = 1 - c * r / (1 - r)
    return min(1.0, off / diag)


def _null_vertices(rows: np.ndarray):
    """Timelike points orthogonal to each stack of ``n`` normals; ``None`` rows if absent."""
    J = np.ones(rows.shape[-1])
    J[0] = -1.0
    _, _, vt = np.linalg.svd(rows * J)
    v = vt[..., -1, :]
    q = mink_inner(v, v)
    ok = q < 0
    v = v / np.sqrt(np.abs(q))[..., None]
    v = v * np.sign(v[..., :1])
    return v, ok


def _facet_ok(U: np.ndarray, fixed: list, cands: list, edges, angles) -> np.ndarray:
    """Necessary test for each candidate hyperplane ``S``: the facet on ``S`` cut out by
    one hyperplane from every ``fixed`` pair has all its edges and vertex angles in window."""
    m = len(fixed)
    pats = list(itertools.product((0, 1), repeat=m))
    rows = np.array([[[U[fixed[a][p[a]]] for a in range(m)] + [U[c]] for p in pats] for c in cands])
    V, ok = _null_vertices(rows)                          # (K, 2^m, n+1)
    good = ok.all(axis=1)
    idx = {p: k for k, p in enumerate(pats)}
    nbr = [[idx[p[:a] + (1 - p[a],) + p[a + 1:]] for a in range(m)] for p in pats]
    nbr = np.array(nbr)                                   # (2^m, m)
    X = V[:, :, None, :]
    Y = V[:, nbr, :]                                      # (K, 2^m, m, n+1)
    L = dist_arrays(np.broadcast_to(X, Y.shape), Y)
    good &= np.all((L > edges[0]) & (L < edges[1]), axis=(1, 2))
    if m >= 2:
        with np.errstate(invalid="ignore", divide="ignore"):
            D = log_dir_arrays(np.broadcast_to(X, Y.shape), Y)
            G = np.arccos(np.clip(mink_inner(D[:, :, :, None, :], D[:, :, None, :, :]), -1, 1))
        iu = np.triu_indices(m, 1)
        A = G[:, :, iu[0], iu[1]]
        good &= np.all((A > angles[0]) & (A < angles[1]), axis=(1, 2))
    return good & np.all(np.isfinite(L), axis=(1, 2))


def enclosing_cube_search(arr: Arrangement, gamma: Geodesic, eps: float, delta: float,
                          point: float, min_sep: float = 0.0, accept=None):
    """First cube from ``arr`` that encloses ``gamma`` around ``gamma(point)``.

    The two crossing faces must bracket ``point`` with both crossings more
    than ``min_sep`` away from it. Candidates are hyperplanes within
    ``2 eps + delta`` of ``gamma(point)`` (no face of a qualifying cube can be
    farther), ordered by that distance with ties broken by index; pairs and
    tuples of pairs are scanned lexicographically in this order. Only
    necessary conditions of delta-closeness are used to prune, so the result
    is the first qualifying cube of the full scan. ``accept`` is an optional
    extra predicate on the assembled cube. Returns ``None`` when nothing
    qualifies.
    """
    if len(arr) == 0:
        return None
    n = arr.hyperplanes[0].n
    model = _model(n, eps)
    mshape = cube_shape(model)
    edges, angles = _shape_windows(model, delta)
    bound = _adjacent_bound(n, angles)
    U = arr.normals
    x = gamma.point_at(point).vec
    d = _dist_to_planes(x, U)
    reach = edges[1]
    near = [int(i) for i in np.lexsort((np.arange(len(U)), d)) if d[i] <= reach]
    cr = crossings(gamma, U)
    window = math.pi / 2 - delta
    cross = [i for i in near if cr.hits[i] and cr.angle[i] >= window]
    miss = [i for i in near if not cr.hits[i]]
    H = arr.hyperplanes

    tb_pairs = []
    for i, j in itertools.combinations(cross, 2):
        b, t = (i, j) if cr.s[i] < cr.s[j] else (j, i)
        if not (cr.s[b] < point - min_sep - TAU_POINT and cr.s[t] > point + min_sep + TAU_POINT):
            continue
        g = hyperplane_gap(H[b], H[t])
        if not 0 < g < edges[1]:
            continue
        fb, ft = common_perpendicular(H[b], H[t])
        if dist(gamma.point_at(float(cr.s[b])), fb) >= delta or dist(gamma.point_at(float(cr.s[t])), ft) >= delta:
            continue
        tb_pairs.append((b, t))
    if not tb_pairs:
        return None

    # side pairs: disjoint, close enough, gamma between them
    gram = mink_inner(U[:, None, :], U[None, :, :])
    px = mink_inner(U, x)
    cosh_max = math.cosh(edges[1])
    side_pairs = []
    for i, j in itertools.combinations(miss, 2):
        c = gram[i, j]
        if not 1.0 < abs(c) < cosh_max:
            continue
        # orient so <ui,uj> < -1; the slab interior is where both pairings share a sign
        if px[i] * px[j] * (-1.0 if c > 0 else 1.0) > 0:
            side_pairs.append((i, j))

    adj = np.abs(gram) <= bound

    def compatible(p, ids):
        return all(adj[k, m] for k in p for m in ids)

    def attempt(pairs):
        try:
            cube = HCube.from_hyperplane_pairs([(H[i], H[j]) for i, j in pairs])
        except (CubeError, GeometryError):
            return None
        if not cube.contains(HPoint(x)):
            return None
        if delta_close_shapes(cube_shape(cube), mshape) >= delta:
            return None
        if not enclosure_ok(check_enclosure(cube, gamma, eps, delta, model)):
            return None
        if accept is not None and not accept(cube):
            return None
        return cube

    def search(chosen, start, pairs):
        ids = [k for p in chosen for k in p]
        if len(chosen) == n - 1:
            # last side pair: prefilter its hyperplanes by the facet they would carry
            cands = [k for k in {k for p in pairs[start:] for k in p}
                     if k not in ids and compatible((k,), ids)]
            cands.sort()
            if not cands:
                return None
            ok = _facet_ok(U, chosen, cands, edges, angles)
            okset = {k for k, g in zip(cands, ok) if g}
            for p in pairs[start:]:
                if p[0] in okset and p[1] in okset:
                    cube = attempt(chosen + [p])
                    if cube is not None:
                        return cube
            return None
        for idx in range(start, len(pairs)):
            p = pairs[idx]
            if p[0] in ids or p[1] in ids or not compatible(p, ids):
                continue
            cube = search(chosen + [p], idx + 1, pairs)
            if cube is not None:
                return cube
        return None

    for b, t in tb_pairs:
        usable = [p for p in side_pairs if compatible(p, (b, t))]
        cube = search([(b, t)], 0, usable)
        if cube is not None:
            return cube
    return None


def interlocking(a: HCube, b: HCube, gamma: Geodesic) -> bool:
    """Whether the hyperplane of ``a``'s top face lies strictly between ``b``'s top and bottom.

    "Top" is the crossing face further along ``gamma``. The hyperplane must
    be disjoint from both of ``b``'s crossing hyperplanes and its crossing
    with ``gamma`` (the witness point) must lie strictly inside ``b``'s slab.
    """
    ta, tb = top_bottom(a, gamma), top_bottom(b, gamma)
    if len(ta) != 2 or len(tb) != 2:
        raise DistributionError("cube does not meet the geodesic in exactly two faces")
    top_a = a.faces[ta[1][0]]
    bot_b, top_b = b.faces[tb[0][0]], b.faces[tb[1][0]]
    for w in (bot_b, top_b):
        if abs(mink_inner(top_a, w)) <= 1.0 + TAU_POINT:
            return False
    witness = gamma.point_at(ta[1][1]).vec
    return bool(mink_inner(bot_b, witness) < -TAU_POINT and mink_inner(top_b, witness) < -TAU_POINT)


@dataclass(eq=False)
class ChainReport:
    cubes: list = field(default_factory=list)
    interlocking: list = field(default_factory=list)
    intervals: list = field(default_factory=list)
    conditions: list = field(default_factory=list)
    arc: tuple = (0.0, 0.0)
    success: bool = False
    failure_at: float | None = None
    message: str = ""

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "success": self.success,
            "arc": list(self.arc),
            "failure_at": self.failure_at,
            "message": self.message,
            "interlocking": list(self.interlocking),
            "intervals": [list(iv) for iv in self.intervals],
            "conditions": self.conditions,
            "cubes": [cube_to_dict(c) for c in self.cubes],
        }


def chain_cover(arr: Arrangement, gamma: Geodesic, arc, eps: float, delta: float,
                max_steps: int = 100000) -> ChainReport:
    """Greedy chain of interlocking enclosing cubes covering ``gamma`` over ``arc``.

    Starts with a cube around ``gamma(s0)``; each next cube must contain the
    previous exit crossing with both of its own crossings more than ``eps/4``
    away, and must interlock with its predecessor. Failure is reported with the
    arc parameter where no continuation exists.
    """
    s0, s1 = float(arc[0]), float(arc[1])
    if not s1 > s0:
        raise DistributionError("arc must have positive length")
    rep = ChainReport(arc=(s0, s1))
    model = _model(gamma.n, eps)
    cube = enclosing_cube_search(arr, gamma, eps, delta, s0)
    at = s0
    for _ in range(max_steps):
        if cube is None:
            rep.failure_at = at
            rep.message = f"no qualifying cube at s={at:.6g}"
            return rep
        res = check_enclosure(cube, gamma, eps, delta, model)
        if rep.cubes:
            rep.interlocking.append(interlocking(rep.cubes[-1], cube, gamma))
        rep.cubes.append(cube)
        rep.conditions.append({k: v for k, v in res.items() if isinstance(v, bool)})
        rep.intervals.append((res["s_bottom"], res["s_top"]))
        if res["s_top"] >= s1:
            rep.success = coverage_ok(rep.intervals, s0, s1) and all(rep.interlocking)
            if not rep.success:
                rep.failure_at = at
                rep.message = "chain assembled but coverage or interlocking check failed"
            return rep
        prev = cube
        at = res["s_top"]
        cube = enclosing_cube_search(arr, gamma, eps, delta, at, min_sep=eps / 4,
                                     accept=lambda c, prev=prev: interlocking(prev, c, gamma))
    rep.failure_at = at
    rep.message = "step limit reached"
    return rep


def coverage_ok(intervals, s0: float, s1: float) -> bool:
    """Whether the union of open-ended intervals covers [s0, s1] without gaps."""
    reach = s0
    for lo, hi in sorted(intervals):
        if lo > reach:
            return False
        reach = max(reach, hi)
    return reach >= s1


def recheck_chain(rep: ChainReport, gamma: Geodesic, eps: float, delta: float) -> bool:
    """Re-derive every condition of an accepted chain from its cubes alone."""
    model = _model(gamma.n, eps)
    intervals = []
    for c in rep.cubes:
        res = check_enclosure(c, gamma, eps, delta, model)
        if not enclosure_ok(res):
            return False
        intervals.append((res["s_bottom"], res["s_top"]))
    if not all(interlocking(a, b, gamma) for a, b in zip(rep.cubes, rep.cubes[1:])):
        return False
    return coverage_ok(intervals, *rep.arc)


def boxes_along(gamma: Geodesic, eps: float, start: float, stop: float, step: float) -> list[HCube]:
    """Box_model(eps) cubes centered at ``gamma(s)`` for s = start, start+step, ... <= stop.

    Frames are parallel along the geodesic with the first axis tangent to it.
    """
    n = gamma.n
    base = gamma.tangent.base
    frame0 = complete_frame(base, [gamma.tangent.dir])
    cubes = []
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    for k in range(count):
        s = start + k * step
        p = gamma.point_at(s)
        if abs(s) <= TAU_POINT:
            frame = frame0
        else:
            seg = GeodesicSegment(base, p, abs(s))
            frame = [parallel_transport(e, seg) for e in frame0]
        cubes.append(box_model(p, frame, eps))
    return cubes


__all__ = [
    "Arrangement", "ChainReport", "Crossings", "DistributionError", "PlaneSample",
    "boxes_along", "chain_cover", "check_enclosure", "coverage_ok", "crossings",
    "cube_arrangement", "enclosing_cube_search", "enclosure_ok", "eps_density",
    "fibonacci_sphere", "grassmann_dist", "interlocking", "probe_grid", "recheck_chain",
    "top_bottom",
]
