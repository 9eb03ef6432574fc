"""Components of the complement of a quadric and which of them are convex.

Everything here works on a :class:`~convquad.canonical.CanonicalForm`.  A
component is described by a level function ``g`` in canonical coordinates:
the open component is ``{g < 0}`` and its closure ``{g <= 0}``.  Cylinder
directions (coordinates past the base dimension) never enter ``g``, which is
how lifting from the base form to ``R^n`` happens.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError


@dataclass(frozen=True)
class Component:
    descriptor: str
    convex: bool
    bounded: bool
    kind: str
    sign: int = 1

    def to_dict(self):
        return {"descriptor": self.descriptor, "convex": self.convex, "bounded": self.bounded}


@dataclass(frozen=True, eq=False)
class ComplementAnalysis:
    form: object
    components: tuple

    @property
    def count(self):
        return len(self.components)

    @property
    def convex_count(self):
        return sum(c.convex for c in self.components)

    def to_dict(self):
        return {
            "count": self.count,
            "convex_components": self.convex_count,
            "components": [c.to_dict() for c in self.components],
        }


# ---------------------------------------------------------------- descriptors

def _term(i, coeff=True):
    return f"a{i}*xi{i}^2" if coeff else f"xi{i}^2"


def _sum(lo, hi):
    # 1-based inclusive range of squared terms
    return " + ".join(_term(i) for i in range(lo, hi + 1))


def _signed(F):
    pos = _sum(1, F.k)
    m = F.n_squares
    if m > F.k:
        return pos + " - " + " - ".join(_term(i) for i in range(F.k + 1, m + 1))
    return pos


def _cap_rhs(F, const):
    inner = [f"a{i}/a1*xi{i}^2" for i in range(2, F.n_squares + 1)]
    if const:
        inner.append("1/a1")
    return f"sqrt({' + '.join(inner)})" if inner else "0"


# ------------------------------------------------------------- decision table

def complement_analysis(F):
    """Components of ``R^n`` minus the quadric, with convexity flags.

    The table is assembled per canonical family on the base form and lifted
    unchanged to the cylinder; only the ellipsoid interior with ``k = n`` is
    bounded.
    """
    fam, k, r, n = F.family, F.k, F.r, F.n
    C = Component
    comps = []
    if fam == "A":
        interior = C(f"{_sum(1, k)} < 1", True, k == n, "inside")
        if k == 1:
            comps = [interior,
                     C("xi1 > sqrt(1/a1)", True, False, "cap", 1),
                     C("xi1 < -sqrt(1/a1)", True, False, "cap", -1)]
        else:
            comps = [interior, C(f"{_sum(1, k)} > 1", False, False, "outside")]
    elif fam == "B":
        if k == 1:
            rhs = _cap_rhs(F, True)
            comps = [C(f"xi1 > {rhs}", True, False, "cap", 1),
                     C(f"xi1 < -{rhs}", True, False, "cap", -1),
                     C(f"{_signed(F)} < 1", False, False, "inside")]
        else:
            comps = [C(f"{_signed(F)} > 1", False, False, "outside"),
                     C(f"{_signed(F)} < 1", False, False, "inside")]
    elif fam == "C":
        if k == 1:
            comps = [C("xi1 > 0", True, False, "cap", 1), C("xi1 < 0", True, False, "cap", -1)]
        else:
            comps = [C(f"{_sum(1, k)} > 0", False, False, "outside")]
    elif fam == "D":
        if k == 1:
            rhs = _cap_rhs(F, False)
            comps = [C(f"xi1 > {rhs}", True, False, "cap", 1),
                     C(f"xi1 < -{rhs}", True, False, "cap", -1)]
            if r == 2:
                comps += [C("xi2 > sqrt(a1/a2)*|xi1|", True, False, "cross_cap", 1),
                          C("xi2 < -sqrt(a1/a2)*|xi1|", True, False, "cross_cap", -1)]
            else:
                comps.append(C(f"{_signed(F)} < 0", False, False, "inside"))
        else:
            comps = [C(f"{_signed(F)} > 0", False, False, "outside"),
                     C(f"{_signed(F)} < 0", False, False, "inside")]
    else:
        comps = [C(f"{_signed(F)} < xi{r}", k == r - 1, False, "epigraph"),
                 C(f"{_signed(F)} > xi{r}", False, False, "hypograph")]
    return ComplementAnalysis(F, tuple(comps))


def level(F, component, xi):
    """Level function of ``component`` at canonical points ``xi`` (shape (..., n))."""
    xi = np.asarray(xi, dtype=float)
    k, m = F.k, F.n_squares
    a = F.a
    P = np.sum(a[:k] * xi[..., :k] ** 2, axis=-1)
    N = np.sum(a[k:m] * xi[..., k:m] ** 2, axis=-1)
    const = 1.0 if F.family in "AB" else 0.0
    kind, s = component.kind, component.sign
    if kind == "inside":
        return P - N - const
    if kind == "outside":
        return const - (P - N)
    if kind == "cap":
        return np.sqrt((N + const) / a[0]) - s * xi[..., 0]
    if kind == "cross_cap":
        return np.sqrt(a[0] / a[1]) * np.abs(xi[..., 0]) - s * xi[..., 1]
    if kind == "epigraph":
        return P - N - xi[..., F.r - 1]
    if kind == "hypograph":
        return xi[..., F.r - 1] - (P - N)
    raise InvalidInputError(f"unknown component kind {kind!r}")


def _component(F, index):
    comps = complement_analysis(F).components
    if not 0 <= index < len(comps):
        raise IndexError(f"component index {index} out of range (0..{len(comps) - 1})")
    return comps[index]


def membership(F, component_index, x):
    """Whether ``x`` (original coordinates) lies in the open component."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != F.n:
        raise InvalidInputError("dimension mismatch")
    return level(F, _component(F, component_index), F.to_canonical(x)) < 0


# ------------------------------------------------------- convex quadric check

@dataclass(frozen=True, eq=False)
class ConvexQuadricDescriptor:
    """A convex quadric: the boundary of a convex complement component.

    ``component_index`` points into :func:`complement_analysis` of
    ``base_form``; the closure of that component is the convex set bounded by
    the quadric.  Sheet cases carry the half-space ``xi1 >= 0``.
    """

    corollary_case: int
    base_form: object
    sheet_constraint: str = None
    component_index: int = 0

    @property
    def component(self):
        return _component(self.base_form, self.component_index)

    def to_dict(self):
        return {
            "corollary_case": self.corollary_case,
            "sheet_constraint": self.sheet_constraint,
            "component": self.component.descriptor,
        }


def is_convex_quadric(F):
    """Descriptor if ``F`` bounds a convex complement component, else None."""
    fam, k, r = F.family, F.k, F.r
    if fam == "A":
        return ConvexQuadricDescriptor(1, F)
    if fam == "B" and k == 1:
        return ConvexQuadricDescriptor(2, F, "xi1 >= 0")
    if fam == "C" and k == 1:
        return ConvexQuadricDescriptor(3, F)
    if fam == "D" and k == 1:
        return ConvexQuadricDescriptor(4, F, "xi1 >= 0")
    if fam == "E" and k == r - 1:
        return ConvexQuadricDescriptor(5, F)
    return None


# ------------------------------------------------------------- recession cone

@dataclass(frozen=True, eq=False)
class RecessionCone:
    """Recession cone in canonical coordinates.

    The cone is ``L + C`` with ``L`` the span of the ``lineality`` axes and
    ``C`` a cone in the first ``base_dim`` coordinates: just the origin, the
    ray along ``axis``, or the solid cone ``y1 >= sqrt(sum a_i/a_1 y_i^2)``.
    """

    n: int
    base_dim: int
    lower: str
    axis: int = 0
    a: np.ndarray = field(default=None)

    @property
    def lineality(self):
        return tuple(range(self.base_dim, self.n))

    @property
    def category(self):
        names = {"origin": "origin-only", "ray": "single ray", "solid_cone": "solid cone"}
        if not self.lineality:
            return names[self.lower]
        if self.lower == "origin":
            return "subspace"
        return f"subspace + {names[self.lower]}"

    def contains(self, y, tol=1e-12):
        y = np.asarray(y, dtype=float)
        base = y[..., :self.base_dim]
        scale = tol * np.maximum(1.0, np.linalg.norm(y, axis=-1))
        if self.lower == "origin":
            return np.linalg.norm(base, axis=-1) <= scale
        if self.lower == "ray":
            off = np.delete(base, self.axis, axis=-1)
            return (np.linalg.norm(off, axis=-1) <= scale) & (base[..., self.axis] >= -scale)
        a = self.a
        rest = np.sum(a[1:] / a[0] * base[..., 1:] ** 2, axis=-1)
        return base[..., 0] >= np.sqrt(rest) - scale

    def describe(self):
        if self.lower == "origin":
            low = "{o}"
        elif self.lower == "ray":
            low = f"xi{self.axis + 1} >= 0 on the xi{self.axis + 1} axis"
        else:
            terms = " + ".join(f"a{i}/a1*xi{i}^2" for i in range(2, self.base_dim + 1))
            low = f"xi1 >= sqrt({terms})"
        if self.lineality:
            free = ", ".join(f"xi{i + 1}" for i in self.lineality)
            return f"{low} (+) span({free})"
        return low

    def to_dict(self):
        return {"category": self.category, "cone": self.describe()}


def recession_cone(D):
    """Recession cone of the closed convex set bounded by ``D``."""
    F = D.base_form
    case = D.corollary_case
    if case == 1:
        return RecessionCone(F.n, F.k, "origin")
    if case == 3:
        return RecessionCone(F.n, 1, "ray", axis=0)
    if case == 5:
        return RecessionCone(F.n, F.r, "ray", axis=F.r - 1)
    return RecessionCone(F.n, F.r, "solid_cone", a=F.a[:F.r])
