"""Develop the boundary of a model cube face by face and measure holonomy.

Each face is placed by rotating the previous one about their common ridge
by the measured dihedral angle. Because the faces are totally geodesic the
placements agree around every loop of faces.
"""

import math

import numpy as np

from hypwarp.developing import develop_boundary, dihedral_angle
from hypwarp.hyperboloid import HPoint, Isometry, random_isometry, standard_frame
from hypwarp.region import box_model, cube_shape

o = HPoint.basepoint(3)
for eps in (0.05, 0.1, 0.3):
    c = box_model(o, standard_frame(o), eps)
    th = dihedral_angle(c, (0, 1), (1, 1))
    sh = cube_shape(c)
    print(f"eps={eps}: edge {sh.edges()[0]:.6f}, dihedral {th:.6f} "
          f"(cos = {math.cos(th):.6f}, sinh^2 eps = {math.sinh(eps) ** 2:.6f})")

c = box_model(o, standard_frame(o), 0.1)
res = develop_boundary(c, (0, 0), Isometry.identity(3))
print(f"\nholonomy over {res.loops_checked} face loops: {res.holonomy_defect:.1e}")
print(f"gaps between developed opposite faces: {[round(g, 6) for g in res.opposite_face_gap]}")

# moving the cube first changes nothing intrinsic
g = random_isometry(np.random.default_rng(3), radius=1.0)
res2 = develop_boundary(c.transformed(g), (0, 0), Isometry.identity(3))
print(f"after a rigid motion: holonomy {res2.holonomy_defect:.1e}, "
      f"gaps {[round(x, 6) for x in res2.opposite_face_gap]}")
