"""Hyperbolic geometry toolkit for warped metrics, cube developments and chord comparison.

Submodules
----------
hyperboloid
    Points, tangent vectors, geodesics and isometries in the hyperboloid model.
region
    Totally geodesic hyperplanes, model cubes and delta-closeness.
developing
    Developing maps of cube boundaries and their holonomy.
warped
    Curvature of warped metrics with a cutoff and a grid certificate.
comparison
    Triangle and polygon comparison against constant curvature models.
distribution
    Plane density, enclosing cubes and interlocking chains along geodesics.
"""

__version__ = "0.1.0"
