"""Classification, convexity and constructive geometry of real quadrics in R^n."""

from .bodies import DeltaField, PerturbedEllipsoid, QuadricBody, body_from_dict, boundary_raycast, \
    section_boundary_sample
from .canonical import CanonicalForm, canonical_shapes, canonical_to_coeffs, canonicalize, random_form, \
    sample_points
from .convexity import complement_analysis, is_convex_quadric, membership, recession_cone
from .errors import (ConvergenceError, DegenerateQuadricError, EmptyLocusError, GeometryError,
                     InvalidInputError, QuadricError, RankDeficientError)
from .geometry import RevolutionSpec, fit_quadric, pencil_through, revolve, section
from .linalg import eig_sym, signature
from .quadric import Hyperplane, Isometry, QuadricCoeffs, evaluate, transform
from .scanner import cross_section_consistency, scan

__version__ = "0.1.0"
