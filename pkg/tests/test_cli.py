import json
import subprocess
import sys

import numpy as np
import pytest

from hypwarp.cli import main
from hypwarp.comparison import random_convex_polygon
from hypwarp.distribution import Arrangement, crossings
from hypwarp.hyperboloid import Geodesic, HPoint, standard_frame
from hypwarp.region import box_model, cube_to_dict


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main([*argv, "--out", str(out)])
    report = json.loads(out.read_text(encoding="utf-8")) if out.exists() else None
    if out.exists():
        out.unlink()
    return code, report


def strip_metadata(report):
    return {k: v for k, v in report.items() if k != "metadata"}


def test_curvature_verify_pass(tmp_path):
    csv_path = tmp_path / "sweep.csv"
    code, rep = run(tmp_path, "curvature-verify", "--ell", "2", "--t0", "0.5", "--auto-M",
                    "--grid", "1000x100", "--fd-samples", "30", "--csv", str(csv_path))
    assert code == 0 and rep["pass"]
    assert rep["schema_version"] == 1 and "timestamp" in rep["metadata"]
    assert rep["certificate"]["argmin"] == {"t": 0.0, "mix": 0.0}
    assert rep["tail_curvature"] == -4.0
    assert csv_path.read_text().startswith("t,mix,K")


def test_curvature_verify_equality_case(tmp_path):
    code, rep = run(tmp_path, "curvature-verify", "--ell", "1", "--grid", "1000x100",
                    "--fd-samples", "20")
    assert code == 0 and abs(rep["certificate"]["margin_min"]) <= 1e-12


def test_curvature_verify_steep_cutoff_fails(tmp_path):
    code, rep = run(tmp_path, "curvature-verify", "--ell", "2", "--M", "0.6", "--t0", "0.5",
                    "--grid", "1000x100", "--fd-samples", "10")
    assert code == 1 and not rep["checks"]["margin"]
    lo, hi = rep["certificate"]["violation_t_range"]
    assert -0.6 <= lo < hi <= 0.6


def test_curvature_verify_usage_errors(tmp_path, capsys):
    assert main(["curvature-verify", "--ell", "0.5"]) == 2
    assert main(["curvature-verify", "--grid", "12"]) == 2
    assert main(["curvature-verify", "--M", "3", "--auto-M"]) == 2
    assert main(["no-such-command"]) == 2
    assert "error" in capsys.readouterr().err


def test_reports_are_deterministic(tmp_path):
    args = ("curvature-verify", "--grid", "1000x100", "--fd-samples", "15", "--seed", "4")
    _, a = run(tmp_path, *args)
    _, b = run(tmp_path, *args)
    assert json.dumps(strip_metadata(a), sort_keys=True) == json.dumps(strip_metadata(b),
                                                                     sort_keys=True)
    assert a["seed"] == 4


def test_develop_from_params_and_file(tmp_path):
    code, rep = run(tmp_path, "develop", "--eps", "0.1")
    assert code == 0 and rep["result"]["holonomy_defect"] <= 1e-9
    p = HPoint.from_spatial(np.array([0.3, -0.2, 0.1]))
    cube_file = tmp_path / "cube.json"
    cube_file.write_text(json.dumps(cube_to_dict(box_model(p, standard_frame(p), 0.2))))
    code, rep = run(tmp_path, "develop", "--cube", str(cube_file))
    assert code == 0 and all(g > 0 for g in rep["result"]["opposite_face_gap"])
    cube_file.write_text('{"faces": 3}')
    assert main(["develop", "--cube", str(cube_file)]) == 2


def test_compare(tmp_path):
    poly = tmp_path / "poly.json"
    poly.write_text(json.dumps(random_convex_polygon(np.random.default_rng(2), 5).to_dict()))
    code, rep = run(tmp_path, "compare", "--polygon", str(poly), "--k", "4")
    assert code == 0 and rep["verdict"]["all_geq"] and rep["self_check"]["all_equal"]
    poly.write_text(json.dumps({"sides": [1, 1, 1], "angles": [0.1, 0.1, 0.1]}))
    assert main(["compare", "--polygon", str(poly)]) == 2
    assert main(["compare", "--polygon", str(tmp_path / "missing.json")]) == 2


def test_boxmodel(tmp_path):
    code, rep = run(tmp_path, "boxmodel", "--eps", "0.3")
    assert code == 0 and rep["adjacent_inner_product_error"] <= 1e-12
    assert main(["boxmodel", "--eps", "5"]) == 2


def test_density(tmp_path):
    recs = [{"base": [1, 0, 0, 0], "normal": list(e)} for e in np.eye(4)[1:]]
    f = tmp_path / "s.json"
    f.write_text(json.dumps(recs))
    code, rep = run(tmp_path, "density", "--samples", str(f), "--probes", str(f), "--eps", "1e-12")
    assert code == 0 and rep["eps_density"] == 0.0
    code, rep = run(tmp_path, "density", "--samples", str(f), "--eps", "0.01", "--n-dirs", "4",
                    "--n-normals", "4", "--n-radii", "1")
    assert code == 1 and rep["eps_density"] > 0.01


def test_enclose(tmp_path):
    arr_file = tmp_path / "arr.json"
    code, rep = run(tmp_path, "enclose", "--arc", "-0.6", "0.6", "--arrangement-out", str(arr_file))
    assert code == 0 and rep["chain"]["success"] and rep["recheck"]
    arr = Arrangement.from_dict(json.loads(arr_file.read_text()))
    cr = crossings(Geodesic(standard_frame(HPoint.basepoint(3))[0]), arr.normals)
    k = int(np.argmin(np.where(cr.hits, np.abs(cr.s - 0.3), np.inf)))
    code, rep = run(tmp_path, "enclose", "--arc", "-0.6", "0.6", "--arrangement", str(arr_file),
                    "--remove", str(k))
    assert code == 1 and rep["removed"] == k
    assert 0.0 <= rep["chain"]["failure_at"] <= 0.4
    assert main(["enclose", "--arc", "1", "0"]) == 2


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "hypwarp.cli", "boxmodel", "--eps", "0.1"],
                         capture_output=True, text=True, check=False)
    assert out.returncode == 0
    assert json.loads(out.stdout)["pass"] is True
