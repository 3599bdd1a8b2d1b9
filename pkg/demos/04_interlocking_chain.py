"""Cover a geodesic by interlocking cubes cut out of a hyperplane arrangement.

The arrangement is the set of face hyperplanes of model cubes placed every
0.1 along a geodesic. The search only sees the hyperplanes, not the cubes.
It must rediscover cubes that enclose the geodesic and overlap in the
interlocking pattern. Removing a single hyperplane breaks the chain exactly
there.
"""

import time

import numpy as np

from hypwarp.distribution import (PlaneSample, boxes_along, chain_cover, crossings,
                                  cube_arrangement, eps_density, probe_grid, recheck_chain)
from hypwarp.hyperboloid import Geodesic, HPoint, standard_frame

o = HPoint.basepoint(3)
samples = probe_grid(o, 0.5, n_radii=1, n_dirs=6, n_normals=8)
coarse = [PlaneSample.from_normal(e) for e in standard_frame(o)]
print(f"density of the 3 coordinate planes over {len(samples)} probes: "
      f"{eps_density(coarse, samples):.3f}")
print(f"density of the probes over themselves: {eps_density(samples, samples)}")

gamma = Geodesic(standard_frame(o)[0])
eps, delta = 0.1, 0.05
arr = cube_arrangement(boxes_along(gamma, eps, -5.2, 5.2, eps))
print(f"\narrangement: {len(arr.hyperplanes)} hyperplanes")

t = time.perf_counter()
rep = chain_cover(arr, gamma, (-5.0, 5.0), eps, delta)
print(f"chain over [-5, 5]: success={rep.success}, {len(rep.cubes)} cubes, "
      f"all interlocking={all(rep.interlocking)} ({time.perf_counter() - t:.1f}s)")
print(f"independent recheck: {recheck_chain(rep, gamma, eps, delta)}")
print("first coverage intervals:", [tuple(round(float(x), 3) for x in iv) for iv in rep.intervals[:3]])

cr = crossings(gamma, arr.normals)
k = int(np.argmin(np.where(cr.hits, np.abs(cr.s - 0.3), np.inf)))
broken = chain_cover(arr.without(k), gamma, (-5.0, 5.0), eps, delta)
print(f"\nwithout the hyperplane crossing at s={cr.s[k]:.2f}: success={broken.success}, "
      f"stopped at s={broken.failure_at:.2f} ({broken.message})")
