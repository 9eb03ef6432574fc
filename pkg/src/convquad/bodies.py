"""Closed convex bodies with a level-function membership test.

Two kinds are modelled:

``QuadricBody``
    The closure of the convex complement component attached to a convex
    quadric (ellipsoid, hyperboloid sheet, cone sheet, paraboloid, ...).
``PerturbedEllipsoid``
    ``sum (xi_i/alpha_i)^2 + eps * sum (xi_i/alpha_i)^p <= 1`` with even
    ``p >= 4``.  Convex for ``eps >= 0`` and a quadric body only at
    ``eps = 0``; used as a negative control.

Both expose ``level(x)``, negative inside, zero on the boundary.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import RBFInterpolator
from scipy.optimize import minimize

from .canonical import CanonicalForm, canonicalize, reconstruct
from .convexity import is_convex_quadric, level as component_level
from .errors import GeometryError, InvalidInputError, RayNeverExitsError
from .quadric import Isometry, QuadricCoeffs

RAY_CAP = 1e6  # in units of body scale
MAX_DOUBLINGS = 80
SAMPLE_REACH = 100.0  # section samples beyond this many body scales are redrawn
# a slice point counts as interior only if its level is below this; tangent
# hyperplanes otherwise pass on round-off
INTERIOR_MARGIN = 1e-9


class ConvexBody:
    """Interface shared by the body models."""

    n: int
    interior_point: np.ndarray
    scale: float

    def level(self, x):
        raise NotImplementedError

    def contains(self, x):
        return self.level(x) <= 0

    def to_dict(self):
        raise NotImplementedError


@dataclass(frozen=True, eq=False)
class QuadricBody(ConvexBody):
    descriptor: object
    interior_point: np.ndarray = field(init=False)

    def __post_init__(self):
        F = self.form
        xi = np.zeros(F.n)
        case = self.descriptor.corollary_case
        if case == 2:
            xi[0] = 2.0 / np.sqrt(F.a[0])
        elif case in (3, 4):
            xi[0] = 1.0
        elif case == 5:
            xi[F.r - 1] = 1.0
        object.__setattr__(self, "interior_point", F.to_canonical.inverse()(xi))

    @classmethod
    def from_form(cls, F):
        D = is_convex_quadric(F)
        if D is None:
            raise GeometryError(f"{F.label()} does not bound a convex component")
        return cls(D)

    @classmethod
    def from_coeffs(cls, Q, tol_rel=1e-9):
        return cls.from_form(canonicalize(Q, tol_rel))

    @classmethod
    def _placed(cls, family, n, k, r, a, placement):
        # canonical forms list each block's coefficients in descending order, so
        # sort them and permute the coordinates to keep every a_i on its axis
        a = np.asarray(a, dtype=float)
        order = np.concatenate([np.argsort(-a[:k], kind="stable"), k + np.argsort(-a[k:], kind="stable")])
        perm = np.concatenate([order, np.arange(order.size, n)])
        T = _place(placement, n)
        T = Isometry(T.R[perm], T.t[perm])
        return cls.from_form(CanonicalForm(family, n, k, r, a[order], T))

    @classmethod
    def ellipsoid(cls, semi_axes, placement=None):
        """``sum (x_i / s_i)^2 <= 1`` in the coordinates ``placement(x)``."""
        semi_axes = np.asarray(semi_axes, dtype=float)
        n = semi_axes.size
        return cls._placed("A", n, n, n, 1.0 / semi_axes ** 2, placement)

    @classmethod
    def hyperboloid_sheet(cls, a, placement=None):
        """``a_1 x_1^2 - a_2 x_2^2 - ... - a_n x_n^2 >= 1`` with ``x_1 > 0``."""
        a = np.asarray(a, dtype=float)
        n = a.size
        return cls._placed("B", n, 1, n, a, placement)

    @classmethod
    def cone_sheet(cls, a, placement=None):
        """``a_1 x_1^2 >= a_2 x_2^2 + ... + a_n x_n^2`` with ``x_1 >= 0``."""
        a = np.asarray(a, dtype=float) / a[0]
        n = a.size
        return cls._placed("D", n, 1, n, a, placement)

    @classmethod
    def paraboloid(cls, a, placement=None):
        """``a_1 x_1^2 + ... + a_{n-1} x_{n-1}^2 <= x_n``."""
        a = np.asarray(a, dtype=float)
        n = a.size + 1
        return cls._placed("E", n, n - 1, n, a, placement)

    @property
    def form(self):
        return self.descriptor.base_form

    @property
    def n(self):
        return self.form.n

    @property
    def scale(self):
        return float(np.max(1.0 / np.sqrt(self.form.a)))

    @property
    def coeffs(self):
        """The body's quadric in ambient coordinates."""
        return reconstruct(self.form)

    def level(self, x):
        F = self.form
        return component_level(F, self.descriptor.component, F.to_canonical(x))

    def to_dict(self):
        return {"kind": "quadric", **self.form.to_dict()}


@dataclass(frozen=True, eq=False)
class PerturbedEllipsoid(ConvexBody):
    semi_axes: np.ndarray
    eps: float = 0.0
    p: int = 4
    placement: Isometry = None
    interior_point: np.ndarray = field(init=False)

    def __post_init__(self):
        ax = np.asarray(self.semi_axes, dtype=float)
        if np.any(ax <= 0):
            raise InvalidInputError("semi-axes must be positive")
        if self.eps < 0:
            raise InvalidInputError("bump amplitude must be nonnegative")
        if self.p < 4 or self.p % 2:
            raise InvalidInputError("bump exponent must be an even integer >= 4")
        T = _place(self.placement, ax.size)
        object.__setattr__(self, "semi_axes", ax)
        object.__setattr__(self, "placement", T)
        object.__setattr__(self, "interior_point", T.inverse()(np.zeros(ax.size)))

    @property
    def n(self):
        return self.semi_axes.size

    @property
    def scale(self):
        return float(np.max(self.semi_axes))

    def level(self, x):
        s = self.placement(x) / self.semi_axes
        return np.sum(s ** 2, axis=-1) + self.eps * np.sum(s ** self.p, axis=-1) - 1.0

    def to_dict(self):
        return {"kind": "perturbed", "semi_axes": self.semi_axes.tolist(), "eps": self.eps, "p": self.p,
                "R": self.placement.R.tolist(), "t": self.placement.t.tolist()}


def _place(placement, n):
    return Isometry.identity(n) if placement is None else placement


def body_from_dict(d):
    """Build a body from its JSON object (``kind`` is ``quadric`` or ``perturbed``)."""
    try:
        kind = d["kind"]
        if kind == "quadric":
            if "coeffs" in d:
                return QuadricBody.from_coeffs(QuadricCoeffs.from_dict(d["coeffs"]))
            return QuadricBody.from_form(CanonicalForm.from_dict(d))
        if kind == "perturbed":
            n = len(d["semi_axes"])
            T = Isometry(d.get("R", np.eye(n)), d.get("t", np.zeros(n)))
            return PerturbedEllipsoid(d["semi_axes"], float(d.get("eps", 0.0)), int(d.get("p", 4)), T)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"bad body JSON: {exc}") from exc
    raise InvalidInputError(f"unknown body kind {kind!r}")


def contains(B, x):
    return B.contains(x)


# ------------------------------------------------------------------ ray casting

def _raycast(B, origin, dirs, tol):
    """Ray parameters of the boundary crossings; NaN where a ray never exits."""
    dirs = np.atleast_2d(dirs)
    cap = RAY_CAP * B.scale
    lo = np.zeros(len(dirs))
    hi = np.full(len(dirs), B.scale)
    for _ in range(MAX_DOUBLINGS):
        inside = (B.level(origin + hi[:, None] * dirs) <= 0) & (hi < cap)
        if not inside.any():
            break
        lo[inside] = hi[inside]
        hi[inside] *= 2.0
    never = B.level(origin + hi[:, None] * dirs) <= 0
    live = ~never
    for _ in range(400):
        gap = (hi - lo) > tol * np.maximum(1.0, hi)
        act = live & gap
        if not act.any():
            break
        mid = 0.5 * (lo + hi)
        ins = B.level(origin + mid[:, None] * dirs) <= 0
        lo = np.where(act & ins, mid, lo)
        hi = np.where(act & ~ins, mid, hi)
    t = 0.5 * (lo + hi)
    t[never] = np.nan
    return t


def boundary_raycast(B, origin, direction, tol=1e-12):
    """Boundary point on the ray ``origin + t * direction``, ``t > 0``.

    Bisection on the closed membership indicator; the crossing parameter is
    localized to ``tol * max(1, t)``.

    Raises
    ------
    RayNeverExitsError
        If the ray stays inside up to ``1e6`` body scales.
    """
    origin = np.asarray(origin, dtype=float)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    if not B.level(origin) < 0:
        raise GeometryError("ray origin is not an interior point")
    t = _raycast(B, origin, d[None, :], tol)[0]
    if np.isnan(t):
        raise RayNeverExitsError()
    return origin + t * d


# ----------------------------------------------------------- hyperplane slices

def _first_interior(B, H, p):
    if B.level(p) < -INTERIOR_MARGIN:
        return p
    f = lambda y: float(B.level(H.from_frame(y)))  # noqa: E731

    def stop(intermediate_result):
        if intermediate_result.fun < -INTERIOR_MARGIN:
            raise StopIteration

    res = minimize(f, H.to_frame(p), method="Nelder-Mead", callback=stop,
                   options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    x = H.from_frame(res.x)
    return x if B.level(x) < -INTERIOR_MARGIN else None


def _recenter(B, H, x, rounds=3, pairs=8):
    # median of chord midpoints through x; stays inside by convexity.  Chords
    # reaching far out along an unbounded slice are left out, otherwise they
    # drag the point towards infinity
    rng = np.random.default_rng(12345)
    far = SAMPLE_REACH * (B.scale + np.linalg.norm(x - B.interior_point))
    for _ in range(rounds):
        Y = rng.standard_normal((pairs, H.n - 1))
        dirs = (Y / np.linalg.norm(Y, axis=1, keepdims=True)) @ H.frame.T
        tp = _raycast(B, x, dirs, 1e-9)
        tm = _raycast(B, x, -dirs, 1e-9)
        with np.errstate(invalid="ignore"):
            ok = (tp <= far) & (tm <= far)
        if not ok.any():
            break
        mids = x + 0.5 * (tp[ok] - tm[ok])[:, None] * dirs[ok]
        c = np.median(mids, axis=0)
        c = c - H.signed_distance(c) * H.u
        if not B.level(c) < -INTERIOR_MARGIN:
            break
        x = c
    return x


def slice_interior_point(B, H):
    """A reasonably central interior point of ``B`` on ``H``.

    Returns None when ``H`` does not meet the interior.  The search starts at
    the projection of the body's stored interior point, stops at the first
    interior point found, then moves towards the middle of the slice.
    """
    p = B.interior_point - H.signed_distance(B.interior_point) * H.u
    with np.errstate(over="ignore", invalid="ignore"):
        x = _first_interior(B, H, p)
    if x is None:
        return None
    return _recenter(B, H, x)


def closest_approach(B, H):
    """Distance from ``H`` to ``B`` when ``H`` does not cut the interior."""
    c = B.interior_point
    side = np.sign(H.signed_distance(c)) or 1.0
    if isinstance(B, QuadricBody) and B.form.family in "CD":
        # a cone with apex at the canonical origin: a hyperplane that misses
        # it comes closest at the apex, where SLSQP has no usable gradient
        apex = B.form.to_canonical.inverse()(np.zeros(B.n))
        return max(float(side * H.signed_distance(apex)), 0.0)
    cons = {"type": "ineq", "fun": lambda x: -float(B.level(x))}
    res = minimize(lambda x: side * float(H.signed_distance(x)), c, jac=lambda x: side * H.u,
                   method="SLSQP", constraints=[cons], options={"ftol": 1e-15, "maxiter": 500})
    return max(float(side * H.signed_distance(res.x)), 0.0)


def section_boundary_sample(B, H, m, tol=1e-12, rng=None, origin=None):
    """``m`` points of ``Bd B`` on ``H`` by in-plane ray casting.

    Directions are uniform on the unit sphere of the hyperplane frame.  Rays
    that never exit (unbounded slices), or exit farther than ``SAMPLE_REACH``
    body scales from the origin, are replaced, up to ``8 m`` attempts.  Far
    hits crowd the other samples together once the fit normalizes them.

    Raises
    ------
    GeometryError
        ``hyperplane misses interior`` if ``H`` only supports or misses ``B``.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    if origin is None:
        origin = slice_interior_point(B, H)
        if origin is None:
            raise GeometryError("hyperplane misses interior")
    found = []
    attempts = 0
    d = H.n - 1
    far = SAMPLE_REACH * (B.scale + np.linalg.norm(origin - B.interior_point))
    while len(found) < m and attempts < 8 * m:
        batch = min(m - len(found), 8 * m - attempts)
        Y = rng.standard_normal((batch, d))
        dirs = (Y / np.linalg.norm(Y, axis=1, keepdims=True)) @ H.frame.T
        t = _raycast(B, origin, dirs, tol)
        ok = ~np.isnan(t) & (t <= far)
        found.extend(origin + t[ok, None] * dirs[ok])
        attempts += batch
    if len(found) < m:
        raise GeometryError(f"only {len(found)} of {m} rays exit the slice")
    return np.array(found)


# ------------------------------------------------------------------ delta fields

@dataclass(frozen=True, eq=False)
class DeltaField:
    """Continuous offset ``delta(u)`` on the unit sphere.

    ``constant``: ``delta0``; ``affine``: ``w . u + delta0`` (the hyperplanes
    all pass through ``w`` when ``delta0 = 0``); ``grid``: thin-plate-spline
    interpolation of values given at sample directions.
    """

    kind: str
    delta0: float = 0.0
    w: np.ndarray = None
    nodes: np.ndarray = None
    values: np.ndarray = None

    def __post_init__(self):
        if self.kind not in ("constant", "affine", "grid"):
            raise InvalidInputError(f"unknown delta field kind {self.kind!r}")
        if self.kind == "affine":
            if self.w is None:
                raise InvalidInputError("affine delta field needs w")
            object.__setattr__(self, "w", np.asarray(self.w, dtype=float))
        if self.kind == "grid":
            nodes = np.asarray(self.nodes, dtype=float)
            nodes = nodes / np.linalg.norm(nodes, axis=1, keepdims=True)
            values = np.asarray(self.values, dtype=float)
            object.__setattr__(self, "nodes", nodes)
            object.__setattr__(self, "values", values)
            object.__setattr__(self, "_interp", RBFInterpolator(nodes, values, kernel="thin_plate_spline"))

    @classmethod
    def constant(cls, delta0):
        return cls("constant", float(delta0))

    @classmethod
    def affine(cls, w, delta0=0.0):
        return cls("affine", float(delta0), w)

    @classmethod
    def grid(cls, nodes, values):
        return cls("grid", nodes=nodes, values=values)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == "constant":
            return np.full(u.shape[:-1], self.delta0) if u.ndim > 1 else self.delta0
        if self.kind == "affine":
            return u @ self.w + self.delta0
        out = self._interp(np.atleast_2d(u))
        return out if u.ndim > 1 else float(out[0])

    def to_dict(self):
        if self.kind == "constant":
            return {"kind": "constant", "delta0": self.delta0}
        if self.kind == "affine":
            return {"kind": "affine", "w": self.w.tolist(), "delta0": self.delta0}
        return {"kind": "grid", "nodes": self.nodes.tolist(), "values": self.values.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            kind = d["kind"]
            if kind == "constant":
                return cls.constant(d.get("delta0", 0.0))
            if kind == "affine":
                return cls.affine(d["w"], d.get("delta0", 0.0))
            return cls.grid(d["nodes"], d["values"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad delta field JSON: {exc}") from exc
