"""Scan convex bodies with a continuous family of hyperplanes.

For a body bounded by a quadric every proper section is a quadric, so the
scan should come back clean.  Adding an even-power bump to an ellipsoid keeps
it convex but bends its sections away from conics, and the residuals show it.
"""

import numpy as np

from convquad import DeltaField, QuadricBody, cross_section_consistency, scan
from convquad.bodies import PerturbedEllipsoid
from convquad.quadric import Isometry

rng = np.random.default_rng(11)
T = Isometry.random(3, rng)

bodies = {
    "ellipsoid": QuadricBody.ellipsoid([1.0, 1.5, 2.0], T),
    "hyperboloid sheet": QuadricBody.hyperboloid_sheet([1.0, 0.7, 1.4], T),
    "paraboloid": QuadricBody.paraboloid([1.0, 2.5], T),
}
delta = DeltaField.constant(0.0)

for name, B in bodies.items():
    R = scan(B, delta, n_dirs=150, seed=0)
    print(f"{name:18s} {R.verdict:12s} max residual {R.max_residual:.1e}  {R.counts()}")
    print(f"{'':18s} fitted vs analytic sections differ by {cross_section_consistency(B, delta, 40):.1e}")

print()
for eps in (0.0, 0.01, 0.05, 0.1):
    R = scan(PerturbedEllipsoid([1.0, 1.5, 2.0], eps, 4, T), delta, n_dirs=150, seed=0)
    print(f"bumped ellipsoid eps={eps:<5} {R.verdict:12s} max residual {R.max_residual:.1e}")
