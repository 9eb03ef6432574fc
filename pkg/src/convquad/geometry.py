"""Constructive geometry on quadrics.

* hyperplane sections (restriction of the equation to a frame),
* least-squares quadric fitting through point samples,
* the pencil of quadrics through two hyperplane sections and an extra point,
* revolution of a point set about a codimension-one axis subspace.
"""

from dataclasses import dataclass

import numpy as np

from .canonical import canonicalize
from .errors import EmptyLocusError, GeometryError, InvalidInputError, RankDeficientError
from .quadric import QuadricCoeffs, evaluate


# ------------------------------------------------------------------ sections

@dataclass(frozen=True, eq=False)
class SectionResult:
    """Restriction of a quadric to a hyperplane, in the hyperplane's frame.

    When the quadratic part vanishes on the hyperplane, ``coeffs`` is None and
    ``linear`` holds ``(b', c')`` of the remaining affine equation
    ``2 b'.y + c' = 0``.
    """

    coeffs: QuadricCoeffs
    embedding: object
    empty: bool
    degenerate_to_plane: bool
    form: object = None
    linear: tuple = None

    def to_dict(self):
        out = {
            "coeffs": None if self.coeffs is None else self.coeffs.to_dict(),
            "hyperplane": self.embedding.to_dict(),
            "empty": self.empty,
            "degenerate_to_plane": self.degenerate_to_plane,
            "canonical": None if self.form is None else self.form.to_dict(),
        }
        if self.linear is not None:
            out["linear"] = {"b": self.linear[0].tolist(), "c": self.linear[1]}
        return out


def section(Q, H, tol=1e-9):
    """Intersect ``Q`` with the hyperplane ``H``.

    Substitutes ``x = H.origin + H.frame @ y`` into the equation.  Emptiness is
    decided by canonicalizing the restricted equation.
    """
    if Q.n != H.n:
        raise InvalidInputError("dimension mismatch between quadric and hyperplane")
    F, p0 = H.frame, H.origin
    A = F.T @ Q.A @ F
    b = F.T @ (Q.A @ p0 + Q.b)
    c = float(evaluate(Q, p0))
    if np.linalg.norm(A) <= tol * np.linalg.norm(Q.A):
        empty = np.linalg.norm(b) <= tol * Q.scale() and abs(c) > tol * Q.scale()
        return SectionResult(None, H, bool(empty), True, linear=(b, c))
    R = QuadricCoeffs(A, b, c)
    try:
        form = canonicalize(R, tol)
    except EmptyLocusError:
        return SectionResult(R, H, True, False)
    return SectionResult(R, H, False, False, form)


# ------------------------------------------------------------------- fitting

def n_coeffs(d):
    """Dimension of the space of quadrics in ``R^d``."""
    return (d + 1) * (d + 2) // 2


def quadratic_features(X):
    """Monomials ``xi_i xi_k (i <= k), xi_i, 1`` for each row of ``X``."""
    X = np.atleast_2d(np.asarray(X, dtype=float))
    iu = np.triu_indices(X.shape[1])
    quad = X[:, iu[0]] * X[:, iu[1]]
    return np.hstack([quad, X, np.ones((X.shape[0], 1))])


def _normalizer(X):
    center = X.mean(axis=0)
    scale = np.sqrt(np.mean(np.sum((X - center) ** 2, axis=1)))
    if scale == 0:
        raise RankDeficientError()
    return center, scale


def _denormalize(theta, d, center, scale):
    """Coefficients in original coordinates of ``Qn((x - center) / scale)``."""
    Qn = QuadricCoeffs.from_theta(theta, d)
    A = Qn.A / scale ** 2
    b = Qn.b / scale - A @ center
    c = center @ A @ center - 2.0 * (Qn.b / scale) @ center + Qn.c
    return QuadricCoeffs(A, b, c)


def _null_space(Phi, tol):
    """Right singular vectors ordered by singular value, plus the null dimension."""
    _, sv, Vt = np.linalg.svd(Phi, full_matrices=True)
    full = np.zeros(Vt.shape[0])
    full[:sv.size] = sv
    order = np.argsort(full, kind="stable")
    top = full.max()
    null_dim = int(np.sum(full <= tol * top)) if top > 0 else full.size
    return Vt[order], full[order], null_dim


def fit_quadric(points, tol=1e-9):
    """Least-squares quadric through ``points``.

    The points are centred and scaled to unit RMS radius; the fit is the
    smallest right singular vector of the monomial feature matrix (unit-norm
    coefficient constraint), skipping directions whose quadratic part is
    negligible.  ``residual`` is ``max |Q(p)| / ||theta||`` measured in those
    normalized coordinates, so it does not depend on the size of the point
    cloud.

    Returns
    -------
    (QuadricCoeffs, float)
        The fitted quadric in the original coordinates and the residual.

    Raises
    ------
    RankDeficientError
        When more than one quadric fits the points exactly.
    """
    X = np.atleast_2d(np.asarray(points, dtype=float))
    d = X.shape[1]
    center, scale = _normalizer(X)
    Phi = quadratic_features((X - center) / scale)
    vecs, _, null_dim = _null_space(Phi, tol)
    if null_dim > 1:
        raise RankDeficientError()
    nq = n_coeffs(d) - d - 1
    for theta in vecs:
        if np.linalg.norm(theta[:nq]) > tol * np.linalg.norm(theta):
            break
    else:  # pragma: no cover - some direction always carries a quadratic part
        raise RankDeficientError()
    residual = float(np.max(np.abs(Phi @ theta)) / np.linalg.norm(theta))
    return _denormalize(theta, d, center, scale), residual


# -------------------------------------------------------------------- pencil

@dataclass(frozen=True, eq=False)
class PencilResult:
    """``Q = Q0 + mu * Qb`` passing through the extra point.

    ``Qb = 2 l1 l2`` is the product of the two hyperplane equations; ``Q0`` is
    the pencil member whose quadratic part is Frobenius-orthogonal to that of
    ``Qb``, scaled so that ``||A0||_F = sqrt(n)`` with nonnegative trace.
    """

    Q0: QuadricCoeffs
    Qb: QuadricCoeffs
    mu: float
    Q: QuadricCoeffs
    nullspace_dim: int

    def to_dict(self):
        return {"Q0": self.Q0.to_dict(), "Qb": self.Qb.to_dict(), "mu": self.mu,
                "Q": self.Q.to_dict(), "nullspace_dim": self.nullspace_dim}


def hyperplane_product(H1, H2):
    """Coefficients of ``2 (u1.x - d1)(u2.x - d2)``."""
    u1, u2, d1, d2 = H1.u, H2.u, H1.delta, H2.delta
    return QuadricCoeffs(np.outer(u1, u2) + np.outer(u2, u1), -(d2 * u1 + d1 * u2), 2.0 * d1 * d2)


def pencil_through(E1, E2, H1, H2, v, tol=1e-9):
    """Quadric through the samples ``E1``, ``E2`` and the point ``v``.

    Raises
    ------
    GeometryError
        If ``v`` lies on one of the hyperplanes, or the quadrics through the
        samples do not form a one-parameter pencil.
    """
    P = np.vstack([np.atleast_2d(E1), np.atleast_2d(E2)]).astype(float)
    v = np.asarray(v, dtype=float)
    n = P.shape[1]
    if v.size != n or H1.n != n or H2.n != n:
        raise InvalidInputError("dimension mismatch")
    reach = max(1.0, float(np.max(np.linalg.norm(P, axis=1))))
    if min(abs(H1.signed_distance(v)), abs(H2.signed_distance(v))) <= tol * reach:
        raise GeometryError("v on H1 or H2")

    center, scale = _normalizer(P)
    vecs, _, null_dim = _null_space(quadratic_features((P - center) / scale), tol)
    if null_dim != 2:
        raise GeometryError(f"pencil dimension != 2 (got {null_dim})")
    basis = [_denormalize(th, n, center, scale).theta() for th in vecs[:2]]

    Qb = hyperplane_product(H1, H2)
    tb = Qb.theta()
    resid = [th - (th @ tb) / (tb @ tb) * tb for th in basis]
    tc = max(resid, key=np.linalg.norm)
    Ac, Ab = QuadricCoeffs.from_theta(tc, n).A, Qb.A
    t0 = tc - np.sum(Ac * Ab) / np.sum(Ab * Ab) * tb
    A0 = QuadricCoeffs.from_theta(t0, n).A
    t0 = t0 * np.sqrt(n) / np.linalg.norm(A0)
    tr = np.trace(A0)
    if tr < 0 or (tr == 0 and t0[np.flatnonzero(t0)[0]] < 0):
        t0 = -t0
    Q0 = QuadricCoeffs.from_theta(t0, n)

    mu = float(-evaluate(Q0, v) / evaluate(Qb, v))
    Q = QuadricCoeffs(Q0.A + mu * Qb.A, Q0.b + mu * Qb.b, Q0.c + mu * Qb.c)
    return PencilResult(Q0, Qb, mu, Q, null_dim)


# ---------------------------------------------------------------- revolution

def _orthonormal_columns(B, name):
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if B.size and np.max(np.abs(B.T @ B - np.eye(B.shape[1]))) > 1e-10:
        raise GeometryError(f"{name} basis is not orthonormal")
    return B


def _complement_direction(big, small):
    """Unit vector spanning ``span(big)`` minus ``span(small)``."""
    R = big - small @ (small.T @ big) if small.shape[1] else big
    U, _, _ = np.linalg.svd(R, full_matrices=False)
    w = U[:, 0]
    return w if w[np.argmax(np.abs(w))] > 0 else -w


@dataclass(frozen=True, eq=False)
class RevolutionSpec:
    """Nested subspaces ``L1 < L2 < L3`` of dimensions ``m-1, m, m+1``.

    Bases are stored as (n, dim) arrays with orthonormal columns.  ``e_plane``
    spans ``L2`` minus ``L1`` and ``e_out`` spans ``L3`` minus ``L2``; together
    they span the rotation plane ``M``.
    """

    L1: np.ndarray
    L2: np.ndarray
    L3: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.L2).shape[0]
        L1 = _orthonormal_columns(np.asarray(self.L1, dtype=float).reshape(n, -1), "L1")
        L2 = _orthonormal_columns(self.L2, "L2")
        L3 = _orthonormal_columns(self.L3, "L3")
        if not (L1.shape[1] + 1 == L2.shape[1] and L2.shape[1] + 1 == L3.shape[1]):
            raise GeometryError("subspace dimensions must increase by exactly one")
        for small, big in ((L1, L2), (L2, L3)):
            if small.shape[1] and np.max(np.abs(small - big @ (big.T @ small))) > 1e-10:
                raise GeometryError("subspaces are not nested")
        object.__setattr__(self, "L1", L1)
        object.__setattr__(self, "L2", L2)
        object.__setattr__(self, "L3", L3)

    @classmethod
    def coordinate(cls, n, axis, plane, out):
        """Coordinate subspaces: ``L1 = <e_axis>``, ``L2 = L1 + e_plane``, ``L3 = L2 + e_out``.

        Indices are zero-based.
        """
        E = np.eye(n)
        axis = list(axis)
        return cls(E[:, axis], E[:, axis + [plane]], E[:, axis + [plane, out]])

    @property
    def n(self):
        return self.L2.shape[0]

    @property
    def e_plane(self):
        return _complement_direction(self.L2, self.L1)

    @property
    def e_out(self):
        return _complement_direction(self.L3, self.L2)

    def project_axis(self, X):
        return np.asarray(X, dtype=float) @ self.L1 @ self.L1.T

    def to_dict(self):
        return {"L1": self.L1.T.tolist(), "L2": self.L2.T.tolist(), "L3": self.L3.T.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            n = len(d["L2"][0])
            L1 = np.asarray(d["L1"], dtype=float).reshape(-1, n).T
            return cls(L1, np.asarray(d["L2"], dtype=float).T, np.asarray(d["L3"], dtype=float).T)
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad revolution spec JSON: {exc}") from exc


def revolve(Y, spec, samples_per_circle=64, tol=1e-9):
    """Sample the revolution of the points ``Y`` (in ``L2``) about ``L1`` within ``L3``.

    Each ``y`` contributes ``samples_per_circle`` points, uniform in angle, on
    the circle through ``y`` centred at its projection ``z`` onto ``L1`` and
    lying in ``y + M``.  Output has shape ``(len(Y) * samples_per_circle, n)``.
    """
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    if Y.shape[1] != spec.n:
        raise InvalidInputError("dimension mismatch")
    off = np.linalg.norm(Y - Y @ spec.L2 @ spec.L2.T, axis=1)
    if np.any(off > tol * np.maximum(1.0, np.linalg.norm(Y, axis=1))):
        raise GeometryError("point outside L2")
    Z = spec.project_axis(Y)
    rho = np.linalg.norm(Y - Z, axis=1)
    ang = 2.0 * np.pi * np.arange(samples_per_circle) / samples_per_circle
    ring = np.outer(np.cos(ang), spec.e_plane) + np.outer(np.sin(ang), spec.e_out)
    X = Z[:, None, :] + rho[:, None, None] * ring[None, :, :]
    return X.reshape(-1, spec.n)


def unrevolve(X, spec):
    """Map points of ``L3`` to the point of ``L2`` whose circle they lie on.

    ``x`` goes to ``z + ||x - z|| e_plane`` with ``z`` its projection on ``L1``;
    a set ``Y`` symmetric about ``L1`` contains this point exactly when its
    revolution contains ``x``.
    """
    X = np.asarray(X, dtype=float)
    Z = spec.project_axis(X)
    rho = np.linalg.norm(X - Z, axis=-1)
    return Z + rho[..., None] * spec.e_plane


def reflect(X, basis):
    """Reflect points through the subspace spanned by the columns of ``basis``."""
    X = np.asarray(X, dtype=float)
    return 2.0 * (X @ basis @ basis.T) - X
