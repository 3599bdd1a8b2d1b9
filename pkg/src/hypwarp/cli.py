"""Command-line front end: ``hypwarp <subcommand> [options]``.

Every subcommand prints (or writes with ``--out``) a JSON report carrying a
``schema_version`` field. Run-dependent data such as timestamps lives only in
the ``metadata`` block, so two runs with the same arguments agree byte for
byte outside it. Exit codes: 0 all checks pass, 1 checks ran and failed,
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import platform
import sys
import time
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .comparison import (ComparisonError, ComparisonPolygon, ComparisonViolation,
                         polygon_chord_induction,
                         realize_polygon, self_provider, space_form_provider)
from .developing import develop_boundary
from .distribution import (Arrangement, PlaneSample, boxes_along, cube_arrangement,
                           chain_cover, eps_density, probe_grid, recheck_chain)
from .hyperboloid import (GeometryError, Geodesic, HPoint, HTangent, Isometry,
                          mink_inner, standard_frame)
from .region import box_model, cube_from_dict, cube_shape, cube_to_dict
from .warped import (SCHEMA_VERSION, CurvatureError, CutoffSpec, WarpedMetric, fd_crosscheck,
                     sectional_curvature, totally_geodesic_check, verify_bound)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(ValueError):
    pass


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 2000x200, got {text!r}")


def _positive(text: str) -> float:
    v = float(text)
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _emit(report: dict, args, argv) -> None:
    report = dict(report)
    report["schema_version"] = SCHEMA_VERSION
    report["metadata"] = {
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "version": __version__,
        "python": platform.python_version(),
        "argv": list(argv),
        "elapsed_s": round(time.perf_counter() - args._t_start, 4),
    }
    text = json.dumps(_plain(report), indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _plain(x):
    """Convert numpy scalars and arrays so the json module accepts them."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, float) and not math.isfinite(x):
        return repr(x)
    return x


def _center(coords, n: int) -> HPoint:
    if coords is None:
        return HPoint.basepoint(n)
    if len(coords) != n:
        raise UsageError(f"--center needs {n} spatial coordinates")
    return HPoint.from_spatial(np.array(coords, dtype=float))


# ---------------------------------------------------------------------------
# subcommands


def cmd_curvature_verify(args) -> tuple[dict, int]:
    if args.M is not None and args.auto_M:
        raise UsageError("--M and --auto-M are mutually exclusive")
    if args.M is not None:
        cutoff = CutoffSpec(args.t0, args.M)
    else:
        cutoff = CutoffSpec.auto_M(args.t0, args.bound)
    m = WarpedMetric(args.ell, cutoff)
    rep = verify_bound(m, grid=args.grid, threads=args.threads)
    if args.csv:
        rep.write_csv(args.csv)
    fd = fd_crosscheck(m, samples=args.fd_samples, seed=args.seed)
    tg = totally_geodesic_check(m)
    k00 = sectional_curvature(m, 0.0, 0.0)
    checks = {
        "margin": rep.passed,
        "fd_oracle": fd["pass"],
        "totally_geodesic": tg <= 1e-9,
    }
    report = {
        "command": "curvature-verify",
        "seed": args.seed,
        "certificate": rep.to_dict(),
        "fd_oracle": {k: v for k, v in fd.items() if k != "rows"},
        "totally_geodesic_defect": tg,
        "K_at_fiber": k00,
        "tail_curvature": m.tail_curvature(),
        "checks": checks,
        "pass": all(checks.values()),
    }
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_develop(args) -> tuple[dict, int]:
    if args.cube:
        cube = cube_from_dict(_load_json(args.cube))
    else:
        c = _center(args.center, args.n)
        cube = box_model(c, standard_frame(c), args.eps)
    res = develop_boundary(cube, (0, 0), Isometry.identity(cube.n), samples=args.samples)
    report = {"command": "develop", "seed": 0, "cube": cube_to_dict(cube),
              "result": res.to_dict(), "pass": res.passed()}
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_compare(args) -> tuple[dict, int]:
    d = _load_json(args.polygon)
    try:
        poly = ComparisonPolygon.from_dict(d)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed polygon record: {exc}")
    realize_polygon(poly)
    ref = polygon_chord_induction(poly, self_provider(poly))
    report = {"command": "compare", "k": args.k, "polygon": poly.to_dict(),
              "self_check": ref.to_dict()}
    try:
        test = polygon_chord_induction(poly, space_form_provider(poly, args.k))
    except ComparisonViolation as exc:
        report.update(verdict=None, violation=str(exc))
        report["pass"] = False
        return report, EXIT_FAIL
    report["verdict"] = test.to_dict()
    report["pass"] = ref.valid and ref.all_equal and test.valid
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_boxmodel(args) -> tuple[dict, int]:
    c = _center(args.center, args.n)
    cube = box_model(c, standard_frame(c), args.eps)
    U = np.array([cube.face(i, s).normal for i in range(cube.n) for s in (0, 1)])
    G = mink_inner(U[:, None, :], U[None, :, :])
    target = -math.sinh(args.eps) ** 2
    ip_err = max(abs(G[2 * i + 1, 2 * j + 1] - target)
                 for i in range(cube.n) for j in range(cube.n) if i != j)
    shape = cube_shape(cube)
    edges, angles = np.array(shape.edges()), np.array(shape.angles())
    center_err = max(abs(abs(math.asinh(mink_inner(c.vec, u))) - args.eps) for u in U)
    checks = {
        "normal_inner_products": ip_err <= 1e-12 * max(1.0, c.vec[0] ** 2),
        "equal_edges": float(np.ptp(edges)) <= 1e-9,
        "center_distance": center_err <= 1e-9,
    }
    report = {
        "command": "boxmodel", "n": cube.n, "eps": args.eps, "cube": cube_to_dict(cube),
        "adjacent_inner_product_target": target, "adjacent_inner_product_error": ip_err,
        "edge_length": float(edges.mean()), "edge_spread": float(np.ptp(edges)),
        "vertex_angle_mean": float(angles.mean()),
        "vertex_angle_offset_from_right": float(np.max(np.abs(angles - math.pi / 2))),
        "checks": checks, "pass": all(checks.values()),
    }
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


def _plane_records(records, label):
    out = []
    try:
        for r in records:
            p = HPoint.projected(np.array(r["base"], dtype=float))
            out.append(PlaneSample.from_normal(HTangent.projected(p, np.array(r["normal"], float))))
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed {label} record: {exc}")
    if not out:
        raise UsageError(f"no {label} given")
    return out


def cmd_density(args) -> tuple[dict, int]:
    d = _load_json(args.samples)
    samples = _plane_records(d["samples"] if isinstance(d, dict) else d, "sample")
    if args.probes:
        probes = _plane_records(_load_json(args.probes), "probe")
    else:
        n = samples[0].base.n
        probes = probe_grid(_center(args.center, n), args.radius, n_radii=args.n_radii,
                            n_dirs=args.n_dirs, n_normals=args.n_normals, seed=args.seed)
    value = eps_density(samples, probes)
    report = {"command": "density", "seed": args.seed, "samples": len(samples),
              "probes": len(probes), "eps_density": value, "threshold": args.eps}
    ok = args.eps is None or value <= args.eps
    report["pass"] = ok
    return report, EXIT_PASS if ok else EXIT_FAIL


def cmd_enclose(args) -> tuple[dict, int]:
    n = args.n
    base = _center(args.center, n)
    if args.direction is not None:
        if len(args.direction) != n + 1:
            raise UsageError(f"--direction needs {n + 1} Minkowski coordinates")
        v = HTangent.projected(base, np.array(args.direction, dtype=float)).normalized()
    else:
        v = standard_frame(base)[0]
    gamma = Geodesic(v)
    s0, s1 = args.arc
    if not s0 < s1:
        raise UsageError("--arc needs start < stop")
    if args.arrangement:
        arr = Arrangement.from_dict(_load_json(args.arrangement))
        if arr.hyperplanes[0].n != n:
            raise UsageError("arrangement dimension does not match --n")
    else:
        step = args.box_step if args.box_step is not None else args.eps
        cubes = boxes_along(gamma, args.eps, s0 - 2 * step, s1 + 2 * step, step)
        arr = cube_arrangement(cubes)
    removed = None
    if args.remove is not None:
        if not 0 <= args.remove < len(arr.hyperplanes):
            raise UsageError("--remove index out of range")
        removed = args.remove
        arr = arr.without(args.remove)
    rep = chain_cover(arr, gamma, (s0, s1), args.eps, args.delta)
    recheck = recheck_chain(rep, gamma, args.eps, args.delta) if rep.success else False
    report = {"command": "enclose", "hyperplanes": len(arr.hyperplanes), "removed": removed,
              "eps": args.eps, "delta": args.delta, "chain": rep.to_dict(),
              "recheck": recheck, "pass": bool(rep.success and recheck)}
    if args.arrangement_out:
        with open(args.arrangement_out, "w", encoding="utf-8") as fh:
            json.dump(_plain(arr.to_dict()), fh)
    return report, EXIT_PASS if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypwarp", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        return sp

    c = common(sub.add_parser("curvature-verify", help="certify K <= -1 for the warped metric"))
    c.add_argument("--ell", type=float, default=2.0)
    c.add_argument("--t0", type=_positive, default=0.5)
    c.add_argument("--M", type=_positive, default=None, help="cutoff end; default --auto-M")
    c.add_argument("--auto-M", action="store_true", help="smallest M with derivative bound <= --bound")
    c.add_argument("--bound", type=_positive, default=0.01)
    c.add_argument("--grid", type=_grid, default=(2000, 200), help="T x MIX grid, e.g. 2000x200")
    c.add_argument("--csv", help="write the margin sweep as CSV")
    c.add_argument("--fd-samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--threads", type=int, default=None, help="default HYPWARP_THREADS or 1")
    c.set_defaults(func=cmd_curvature_verify)

    d = common(sub.add_parser("develop", help="develop a cube boundary and measure holonomy"))
    d.add_argument("--cube", help="cube JSON file {n, faces, vertices}")
    d.add_argument("--n", type=int, default=3)
    d.add_argument("--eps", type=_positive, default=0.1)
    d.add_argument("--center", type=float, nargs="+")
    d.add_argument("--samples", type=int, default=10)
    d.set_defaults(func=cmd_develop)

    k = common(sub.add_parser("compare", help="chord comparison of a polygon against curvature -k"))
    k.add_argument("--polygon", required=True, help="polygon JSON file {sides, angles}")
    k.add_argument("--k", type=_positive, default=4.0)
    k.set_defaults(func=cmd_compare)

    b = common(sub.add_parser("boxmodel", help="build and check the model cube"))
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--eps", type=_positive, default=0.1)
    b.add_argument("--center", type=float, nargs="+")
    b.set_defaults(func=cmd_boxmodel)

    e = common(sub.add_parser("density", help="eps-density of sample planes over probes"))
    e.add_argument("--samples", required=True, help="JSON list of {base, normal}")
    e.add_argument("--probes", help="JSON list of {base, normal}; default a probe grid")
    e.add_argument("--center", type=float, nargs="+")
    e.add_argument("--radius", type=_positive, default=0.5)
    e.add_argument("--n-radii", type=int, default=2)
    e.add_argument("--n-dirs", type=int, default=12)
    e.add_argument("--n-normals", type=int, default=12)
    e.add_argument("--eps", type=_positive, default=None, help="pass iff density <= eps")
    e.add_argument("--seed", type=int, default=0)
    e.set_defaults(func=cmd_density)

    g = common(sub.add_parser("enclose", help="interlocking cube chain along a geodesic"))
    g.add_argument("--arrangement", help="JSON {normals}; default model cubes along the geodesic")
    g.add_argument("--arrangement-out", help="save the arrangement used")
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--center", type=float, nargs="+", help="spatial coordinates of gamma(0)")
    g.add_argument("--direction", type=float, nargs="+", help="Minkowski direction of gamma'(0)")
    g.add_argument("--arc", type=float, nargs=2, default=(-5.0, 5.0))
    g.add_argument("--eps", type=_positive, default=0.1)
    g.add_argument("--delta", type=_positive, default=0.05)
    g.add_argument("--box-step", type=_positive, default=None)
    g.add_argument("--remove", type=int, default=None, help="drop this hyperplane index first")
    g.set_defaults(func=cmd_enclose)
    return p


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args._t_start = time.perf_counter()
    try:
        report, code = args.func(args)
    except (UsageError, GeometryError, CurvatureError, ComparisonError) as exc:
        print(f"hypwarp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError, OSError) as exc:
        print(f"hypwarp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args, argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
