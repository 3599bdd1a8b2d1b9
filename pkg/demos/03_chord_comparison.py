"""Polygons in curvature -k have longer chords than their curvature -1 models.

Fix side lengths and angles. Tracing the same data in a more curved plane
spreads the vertices further apart, and chord-by-chord induction confirms
every chord is at least as long as in the hyperbolic plane.
"""

import math

import numpy as np

from hypwarp.comparison import (ComparisonPolygon, ComparisonViolation, law_of_cosines,
                                polygon_chord_induction, random_convex_polygon, realize_polygon,
                                regular_right_pentagon_side, self_provider, space_form_provider,
                                trace_polygon)

for k in (1.0, 2.0, 4.0):
    print(f"k={k}: right-angled triangle with legs 1, 1 has hypotenuse "
          f"{law_of_cosines(k, 1.0, 1.0, math.pi / 2):.10f}")

s = regular_right_pentagon_side()
pent = ComparisonPolygon([s] * 5, [math.pi / 2] * 5)
print(f"\nregular right-angled pentagon: side {s:.10f}, cosh(side) = {math.cosh(s):.10f}")
print(f"closure defect {trace_polygon(pent)[1]:.1e}")
realize_polygon(pent)

p = random_convex_polygon(np.random.default_rng(11), 6)
print("\nrandom hexagon, sides", np.round(p.sides, 3).tolist())
same = polygon_chord_induction(p, self_provider(p))
print(f"against itself: all chords equal = {same.all_equal}")
v = polygon_chord_induction(p, space_form_provider(p, 4.0))
for ch in v.chords:
    print(f"  chord ({ch['i']},{ch['j']}) span {ch['span']}: model {ch['model']:.6f}  k=4 {ch['test']:.6f}")
print(f"k=4 chords all >= model: {v.all_geq}, first strict at {v.first_strict}")

# a provider that shrinks chords is rejected at the first chord it touches
try:
    polygon_chord_induction(p, lambda i, span: 0.9 * self_provider(p)(i, span))
except ComparisonViolation as exc:
    print(f"\nshrunken provider rejected: {exc}")
