"""Classify a handful of quadrics and look at their complements.

Each equation is disguised by a random rigid motion and a random scale, then
reduced back to canonical form.  For each one we print the canonical label,
the components of the complement, and, when the surface bounds a convex
region, the recession cone of that region.
"""

import numpy as np

from convquad import QuadricCoeffs, canonicalize, complement_analysis, is_convex_quadric, recession_cone
from convquad.quadric import Isometry, scale_equation, transform

rng = np.random.default_rng(1)

examples = {
    "ellipsoid": QuadricCoeffs(np.diag([1.0, 4.0, 9.0]), np.zeros(3), -1.0),
    "one-sheet hyperboloid": QuadricCoeffs(np.diag([1.0, 1.0, -1.0]), np.zeros(3), -1.0),
    "two-sheet hyperboloid": QuadricCoeffs(np.diag([1.0, -1.0, -1.0]), np.zeros(3), -1.0),
    "cone": QuadricCoeffs(np.diag([2.0, -1.0, -1.0]), np.zeros(3), 0.0),
    "saddle": QuadricCoeffs(np.diag([1.0, -1.0, 0.0]), [0.0, 0.0, -0.5], 0.0),
    "paraboloid": QuadricCoeffs(np.diag([1.0, 3.0, 0.0]), [0.0, 0.0, -0.5], 0.0),
    "crossing planes": QuadricCoeffs([[0.0, 0.5, 0.0], [0.5, 0.0, 0.0], [0.0, 0.0, 0.0]], np.zeros(3), 0.0),
}

for name, Q in examples.items():
    Q = scale_equation(transform(Q, Isometry.random(3, rng, spread=2.0)), rng.uniform(-3, 3))
    F = canonicalize(Q)
    an = complement_analysis(F)
    print(f"{name:22s} -> {F.label():6s} a = {np.round(F.a, 4)}")
    for comp in an.components:
        flag = "convex" if comp.convex else "      "
        print(f"    {flag}  {comp.descriptor}")
    D = is_convex_quadric(F)
    if D is not None:
        print(f"    convex quadric, case {D.corollary_case}; recession cone: {recession_cone(D).describe()}")
    print()

# Nothing real here: the classifier refuses rather than inventing a surface.
try:
    canonicalize(QuadricCoeffs(np.eye(2), np.zeros(2), 1.0))
except Exception as exc:
    print("x^2 + y^2 + 1 = 0 ->", exc)
