"""Slice a quadric, sample the slice, and recover it by fitting.

The analytic route restricts the equation to the hyperplane.  The empirical
route casts rays inside the slice of the convex body, fits a conic through
the boundary points and classifies the fit.  The two should agree up to the
equation scale.
"""

import numpy as np

from convquad import Hyperplane, QuadricBody, canonicalize, fit_quadric, section
from convquad.bodies import section_boundary_sample
from convquad.quadric import Isometry

rng = np.random.default_rng(7)
body = QuadricBody.cone_sheet([1.0, 0.5, 2.0], Isometry.random(3, rng))
Q = body.coeffs

for tilt in (0.0, 0.6, 1.2):
    # hyperplanes through an interior point, tilted away from the axis
    axis = body.form.to_canonical.R[0]
    side = np.cross(axis, [1.0, 0.0, 0.0])
    u = axis + tilt * side / np.linalg.norm(side)
    H = Hyperplane.from_normal(u, u @ body.interior_point)

    exact = section(Q, H)
    X = section_boundary_sample(body, H, 30, rng=rng)
    fit, residual = fit_quadric(H.to_frame(X))
    G = canonicalize(fit)
    print(f"tilt {tilt:.1f}: analytic {exact.form.label():6s} a = {np.round(exact.form.a, 6)}")
    print(f"          fitted   {G.label():6s} a = {np.round(G.a, 6)}   residual {residual:.1e}")
