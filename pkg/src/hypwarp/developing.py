"""Developing the boundary of a hypercube into H^n chart by chart.

Each hyperface gets a *placement*, an isometry of H^n whose restriction to
the face is the developed image. Starting from a seed placement, a neighbour
is placed across the shared ridge using only data visible from the ridge:
the ridge itself, the in-face directions normal to it, and the dihedral angle.
Going around every closed loop of faces and comparing with the spanning-tree
placement measures the holonomy; for faces in genuine hyperplanes it vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .hyperboloid import (
    TAU_POINT,
    DegenerateError,
    GeometryError,
    HPoint,
    HTangent,
    Isometry,
    dist_arrays,
    isometry_from_frames,
    log_map,
    mink_inner,
    orthonormalize,
    project_to_sheet,
)
from .region import HCube, Hyperplane, hyperplane_gap

TAU_DEV = 1e-8
RIDGE_SAMPLES = 5

Face = tuple[int, int]


class DevelopmentError(GeometryError):
    pass


@dataclass(frozen=True, eq=False)
class DevelopedChart:
    source_face: Face
    placement: Isometry


@dataclass(frozen=True, eq=False)
class Ridge:
    """Source-side data at one point of the ridge shared by two faces.

    ``inward[f]`` is the unit vector tangent to face ``f``, normal to the
    ridge, pointing into ``f``; ``outward[f]`` is the outward normal of ``f``.
    """

    faces: tuple[Face, Face]
    point: HPoint
    frame: tuple[HTangent, ...]
    inward: dict
    outward: dict


def faces_adjacent(a: Face, b: Face) -> bool:
    return a[0] != b[0]


def _ridge_vertex_ids(c: HCube, a: Face, b: Face) -> list[int]:
    if not faces_adjacent(a, b):
        raise DevelopmentError(f"faces {a} and {b} are not adjacent")
    return [k for k in range(2 ** c.n)
            if (k >> a[0]) & 1 == a[1] and (k >> b[0]) & 1 == b[1]]


def _face_centroid(c: HCube, f: Face) -> HPoint:
    return HPoint.projected(c.vertices[c.face_vertex_ids(*f)].sum(axis=0))


def ridge_at(c: HCube, a: Face, b: Face, weights=None) -> Ridge:
    """Ridge data at a convex combination (``weights``) of the ridge vertices."""
    ids = _ridge_vertex_ids(c, a, b)
    V = c.vertices[ids]
    w = np.full(len(ids), 1.0 / len(ids)) if weights is None else np.asarray(weights, float)
    r = HPoint.projected(w @ V)
    frame: list[HTangent] = []
    for k in ids:
        if len(frame) == c.n - 2:
            break
        try:
            frame = orthonormalize(r, [e.dir for e in frame] + [log_map(r, HPoint(c.vertices[k])).dir])
        except DegenerateError:
            continue
    if len(frame) != c.n - 2:
        raise DevelopmentError("ridge is degenerate")
    inward = {}
    for f in (a, b):
        d = log_map(r, _face_centroid(c, f)).dir
        for e in frame:
            d = d - mink_inner(d, e.dir) * e.dir
        inward[f] = HTangent.projected(r, d).normalized()
    outward = {}
    for f, g in ((a, b), (b, a)):
        basis = [e.dir for e in frame] + [inward[f].dir]
        # unit vector orthogonal to the face's tangent data at r
        full = orthonormalize(r, basis + [inward[g].dir])
        nrm = full[-1]
        if mink_inner(nrm.dir, inward[g].dir) > 0:
            nrm = -nrm
        outward[f] = nrm
    return Ridge((a, b), r, tuple(frame), inward, outward)


def dihedral_angle(c: HCube, face_a: Face, face_b: Face,
                   samples: int = RIDGE_SAMPLES, tol: float = TAU_DEV) -> float:
    """Interior dihedral angle along the ridge of two adjacent faces.

    The angle is measured at ``samples`` points of the ridge (centroid plus
    seeded random convex combinations of its vertices) and must agree at all
    of them within ``tol``; otherwise the faces are not totally geodesic.
    """
    ids = _ridge_vertex_ids(c, face_a, face_b)
    rng = np.random.default_rng(len(ids) * 7919 + face_a[0] * 31 + face_b[0])
    weights = [None] + [rng.dirichlet(np.ones(len(ids))) for _ in range(samples - 1)]
    angles = []
    for w in weights:
        rd = ridge_at(c, face_a, face_b, w)
        cosang = mink_inner(rd.inward[face_a].dir, rd.inward[face_b].dir)
        angles.append(float(np.arccos(np.clip(cosang, -1.0, 1.0))))
    if max(angles) - min(angles) > tol:
        raise DevelopmentError(
            f"dihedral angle of {face_a}/{face_b} varies by {max(angles) - min(angles):.3e} along the ridge")
    return angles[0]


def chart_extension(from_chart: DevelopedChart, ridge: Ridge, to_face: Face,
                    dihedral: float, tol: float = TAU_DEV) -> DevelopedChart:
    """Place ``to_face`` so it agrees with ``from_chart`` on the ridge and opens at ``dihedral``."""
    a = from_chart.source_face
    if set(ridge.faces) != {a, to_face}:
        raise DevelopmentError("ridge is not shared by the two faces")
    if not 0.0 < dihedral < np.pi:
        raise DevelopmentError("dihedral angle must lie in (0, pi)")
    measured = float(np.arccos(np.clip(
        mink_inner(ridge.inward[a].dir, ridge.inward[to_face].dir), -1.0, 1.0)))
    if abs(measured - dihedral) > tol:
        raise DevelopmentError(
            f"ridge data inconsistent: measured angle {measured:.12f} vs dihedral {dihedral:.12f}")
    phi = from_chart.placement
    r = ridge.point
    r_img = phi(r)
    e_img = [phi(e) for e in ridge.frame]
    wa = phi(ridge.inward[a]).dir
    na = phi(ridge.outward[a]).dir
    cs, sn = np.cos(dihedral), np.sin(dihedral)
    wb_img = HTangent.projected(r_img, cs * wa - sn * na)
    nb_img = HTangent.projected(r_img, -cs * na - sn * wa)
    src = list(ridge.frame) + [ridge.inward[to_face], ridge.outward[to_face]]
    dst = e_img + [wb_img, nb_img]
    return DevelopedChart(to_face, isometry_from_frames(r, src, r_img, dst))


def dual_graph(n: int) -> nx.Graph:
    """Face adjacency graph of the n-cube (faces meet iff on different axes)."""
    G = nx.Graph()
    faces = [(i, s) for i in range(n) for s in (0, 1)]
    G.add_nodes_from(faces)
    G.add_edges_from((a, b) for a in faces for b in faces if a < b and faces_adjacent(a, b))
    return G


def face_samples(c: HCube, f: Face, count: int = 10, seed: int = 0) -> np.ndarray:
    """Seeded sample of points of face ``f`` (vertices first, then interior points)."""
    V = c.vertices[c.face_vertex_ids(*f)]
    rng = np.random.default_rng(seed + 101 * f[0] + f[1])
    pts = list(V[:count])
    while len(pts) < count:
        w = rng.dirichlet(np.ones(len(V)))
        pts.append(HPoint.projected(w @ V).vec)
    return np.array(pts)


def _images(g: Isometry, X: np.ndarray) -> np.ndarray:
    return project_to_sheet(g.apply_vec(X))


def chart_displacement(c: HCube, f: Face, A: DevelopedChart, B: DevelopedChart,
                       count: int = 10) -> float:
    """Largest distance between the images of face samples under two placements."""
    X = face_samples(c, f, count)
    return float(np.max(dist_arrays(_images(A.placement, X), _images(B.placement, X))))


def _check_planar(c: HCube, tol: float = TAU_DEV) -> None:
    for f in c.face_list():
        V = c.vertices[c.face_vertex_ids(*f)]
        if np.max(np.abs(mink_inner(V, c.faces[f]))) > tol * max(1.0, float(np.max(V[:, 0]))):
            raise DevelopmentError(f"face {f} is not planar")


@dataclass(eq=False)
class DevelopmentResult:
    charts: dict
    holonomy_defect: float
    opposite_face_gap: list
    face_isometry_defect: float
    loops_checked: int
    dihedrals: dict = field(default_factory=dict)

    def passed(self, tol: float = TAU_DEV) -> bool:
        return (self.holonomy_defect <= tol and min(self.opposite_face_gap) > 0
                and self.face_isometry_defect <= tol)

    def to_dict(self) -> dict:
        return {
            "holonomy_defect": self.holonomy_defect,
            "opposite_face_gap": list(self.opposite_face_gap),
            "face_isometry_defect": self.face_isometry_defect,
            "loops_checked": self.loops_checked,
            "dihedrals": {f"{a[0]}{'-+'[a[1]]}|{b[0]}{'-+'[b[1]]}": v
                          for (a, b), v in sorted(self.dihedrals.items())},
            "charts": {f"{f[0]}{'-+'[f[1]]}": ch.placement.matrix.tolist()
                       for f, ch in sorted(self.charts.items())},
        }


def develop_along(c: HCube, path: list, start: DevelopedChart,
                  dihedrals: dict | None = None) -> DevelopedChart:
    """Carry ``start`` (a chart of ``path[0]``) across successive faces of ``path``."""
    if start.source_face != path[0]:
        raise DevelopmentError("path must start at the chart's face")
    chart = start
    for a, b in zip(path, path[1:]):
        key = (min(a, b), max(a, b))
        th = dihedrals[key] if dihedrals and key in dihedrals else dihedral_angle(c, a, b)
        chart = chart_extension(chart, ridge_at(c, a, b), b, th)
    return chart


def develop_boundary(c: HCube, seed_face: Face, seed_placement: Isometry,
                     samples: int = 10) -> DevelopmentResult:
    """Develop every face from a seed and measure holonomy around all face loops.

    Loops are the simple cycles of the face adjacency graph with length at
    most 2n; each is re-developed from the spanning-tree chart of its first
    face and compared back to that chart.
    """
    seed_face = (int(seed_face[0]), int(seed_face[1]))
    if seed_placement.n != c.n:
        raise DevelopmentError("seed placement has the wrong dimension")
    _check_planar(c)
    G = dual_graph(c.n)
    dihedrals = {(min(a, b), max(a, b)): dihedral_angle(c, a, b) for a, b in G.edges}

    charts = {seed_face: DevelopedChart(seed_face, seed_placement)}
    for a, b in nx.bfs_edges(G, seed_face):
        charts[b] = develop_along(c, [a, b], charts[a], dihedrals)

    # extension is natural, so the chart across a->b is chart_a composed with
    # the extension of the identity chart; cache those transitions per ridge
    trans = {}
    for a, b in G.edges:
        for x, y in ((a, b), (b, a)):
            ident = DevelopedChart(x, Isometry.identity(c.n))
            trans[(x, y)] = develop_along(c, [x, y], ident, dihedrals).placement.matrix
    defect, loops = 0.0, 0
    for cyc in nx.simple_cycles(G, length_bound=2 * c.n):
        loop = list(cyc) + [cyc[0]]
        M = charts[cyc[0]].placement.matrix
        for x, y in zip(loop, loop[1:]):
            M = M @ trans[(x, y)]
        back = DevelopedChart(cyc[0], Isometry(M))
        defect = max(defect, chart_displacement(c, cyc[0], charts[cyc[0]], back, samples))
        loops += 1

    iso_defect = 0.0
    for f, ch in charts.items():
        X = face_samples(c, f, samples)
        Y = _images(ch.placement, X)
        D0 = dist_arrays(X[:, None], X[None])
        D1 = dist_arrays(Y[:, None], Y[None])
        iso_defect = max(iso_defect, float(np.max(np.abs(D0 - D1))))

    gaps = []
    for i in range(c.n):
        hs = [Hyperplane.from_normal(charts[(i, s)].placement.apply_vec(c.faces[i, s]))
              for s in (0, 1)]
        gaps.append(hyperplane_gap(*hs))
    return DevelopmentResult(charts, defect, gaps, iso_defect, loops, dihedrals)


def developed_vertices(c: HCube, result: DevelopmentResult) -> np.ndarray:
    """Vertex images, each taken from the chart of the lowest-numbered incident face."""
    out = np.empty_like(c.vertices)
    for k in range(2 ** c.n):
        f = (0, k & 1)
        out[k] = _images(result.charts[f].placement, c.vertices[k:k + 1])[0]
    return out


def opposite_face_paths(n: int, axis: int) -> list[list[Face]]:
    """All three-face paths from face (axis, 0) to (axis, 1) through a side face."""
    return [[(axis, 0), (j, s), (axis, 1)] for j in range(n) if j != axis for s in (0, 1)]


__all__ = [
    "TAU_DEV", "DevelopedChart", "DevelopmentError", "DevelopmentResult", "Ridge",
    "chart_displacement", "chart_extension", "develop_along", "develop_boundary",
    "developed_vertices", "dihedral_angle", "dual_graph", "face_samples",
    "opposite_face_paths", "ridge_at", "TAU_POINT",
]
