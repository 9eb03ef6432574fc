"""Two constructions: surfaces of revolution and the pencil through two sections.

A hyperbola revolved about its transverse axis gives a two-sheet
hyperboloid; revolved about the conjugate axis it gives a one-sheet
hyperboloid.  Then two ellipses lying in perpendicular planes and meeting in
two points are joined, together with one extra point, by a single quadric.
"""

import numpy as np

from convquad import Hyperplane, RevolutionSpec, canonicalize, fit_quadric, pencil_through, revolve
from convquad.quadric import evaluate

rng = np.random.default_rng(3)

# hyperbola x^2 - y^2 = 1 in the (x, y) plane of R^3
s = rng.uniform(-2, 2, 40)
hyperbola = np.column_stack([np.cosh(s) * rng.choice([-1, 1], 40), np.sinh(s), np.zeros(40)])

E = np.eye(3)
about_x = RevolutionSpec(E[:, :1], E[:, :2], E)              # axis x, rotate y into z
about_y = RevolutionSpec(E[:, 1:2], E[:, [1, 0]], E[:, [1, 0, 2]])  # axis y, rotate x into z

for name, spec in (("about the x axis", about_x), ("about the y axis", about_y)):
    X = revolve(hyperbola, spec, samples_per_circle=24)
    Q, res = fit_quadric(X)
    print(f"revolved {name}: {canonicalize(Q).label()} (fit residual {res:.1e})")

# Two circles through (0, 0, +-1): one in the plane y = 0 centred at (1, 0, 0),
# one in the plane x = 0 centred at (0, 1, 0).
t = np.linspace(0, 2 * np.pi, 30, endpoint=False)
r = np.sqrt(2.0)
E1 = np.column_stack([1 + r * np.cos(t), np.zeros_like(t), r * np.sin(t)])
E2 = np.column_stack([np.zeros_like(t), 1 + r * np.cos(t), r * np.sin(t)])
H1 = Hyperplane([0.0, 1.0, 0.0], 0.0)
H2 = Hyperplane([1.0, 0.0, 0.0], 0.0)
v = np.array([1.0, 1.0, 0.0])

P = pencil_through(E1, E2, H1, H2, v)
print(f"\npencil member through v: mu = {P.mu:.12f}")
print("largest |Q| over both circles and v:", np.max(np.abs(evaluate(P.Q, np.vstack([E1, E2, v])))))
print("the joining quadric is", canonicalize(P.Q).label())
