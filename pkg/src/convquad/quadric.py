"""Quadric coefficients, isometries and hyperplanes.

A quadric is stored as ``x^T A x + 2 b^T x + c`` with ``A`` symmetric.  The
factor 2 on the linear part is deliberate: completing the square then reads
``b / lambda`` with no stray halves.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateQuadricError, InvalidInputError, NotOrthonormalError
from .linalg import complete_frame, is_orthogonal, sym


def _vector(x, n=None, name="vector"):
    x = np.array(x, dtype=float)
    if x.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional")
    if n is not None and x.size != n:
        raise InvalidInputError(f"dimension mismatch: {name} has {x.size} entries, expected {n}")
    return x


@dataclass(frozen=True, eq=False)
class QuadricCoeffs:
    """Coefficients of ``x^T A x + 2 b^T x + c = 0``."""

    A: np.ndarray
    b: np.ndarray
    c: float

    def __post_init__(self):
        A = sym(self.A)
        b = _vector(self.b, A.shape[0], "b")
        if not np.any(A):
            raise DegenerateQuadricError()
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", float(self.c))

    @property
    def n(self):
        return self.A.shape[0]

    def __call__(self, x):
        return evaluate(self, x)

    def gradient(self, x):
        x = np.asarray(x, dtype=float)
        return 2.0 * (x @ self.A + self.b)

    def scale(self):
        """Magnitude of the coefficients, used for relative tolerances."""
        return float(np.sqrt(np.sum(self.A ** 2) + np.sum(self.b ** 2) + self.c ** 2))

    def theta(self):
        """Monomial coefficient vector ``(A_ii, 2A_ik (i<k), 2b_i, c)``.

        Row-major over the upper triangle, matching the feature order of
        :func:`convquad.geometry.quadratic_features`.
        """
        iu = np.triu_indices(self.n)
        quad = np.where(iu[0] == iu[1], 1.0, 2.0) * self.A[iu]
        return np.concatenate([quad, 2.0 * self.b, [self.c]])

    @classmethod
    def from_theta(cls, theta, n):
        theta = np.asarray(theta, dtype=float)
        iu = np.triu_indices(n)
        m = iu[0].size
        A = np.zeros((n, n))
        A[iu] = theta[:m] * np.where(iu[0] == iu[1], 1.0, 0.5)
        A = A + np.triu(A, 1).T
        return cls(A, 0.5 * theta[m:m + n], theta[m + n])

    def to_dict(self):
        return {"n": self.n, "A": self.A.tolist(), "b": self.b.tolist(), "c": self.c}

    @classmethod
    def from_dict(cls, d):
        try:
            A = np.array(d["A"], dtype=float)
            b = d.get("b")
            c = d.get("c", 0.0)
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad quadric JSON: {exc}") from exc
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise InvalidInputError("A must be a square matrix")
        if "n" in d and int(d["n"]) != A.shape[0]:
            raise InvalidInputError("n does not match the size of A")
        if b is None:
            b = np.zeros(A.shape[0])
        return cls(A, b, c)

    def __repr__(self):
        return f"QuadricCoeffs(n={self.n}, A={self.A.tolist()}, b={self.b.tolist()}, c={self.c})"


def evaluate(Q, x):
    """Value of ``x^T A x + 2 b^T x + c``.  ``x`` may be a stack of points."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != Q.n:
        raise InvalidInputError(f"dimension mismatch: point has {x.shape[-1]} coordinates, quadric lives in R^{Q.n}")
    return np.einsum("...i,ij,...j->...", x, Q.A, x) + 2.0 * (x @ Q.b) + Q.c


def scale_equation(Q, s):
    if s == 0:
        raise InvalidInputError("zero scale")
    return QuadricCoeffs(s * Q.A, s * Q.b, s * Q.c)


@dataclass(frozen=True, eq=False)
class Isometry:
    """The map ``x -> R x + t`` with ``R`` orthogonal."""

    R: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        R = np.array(self.R, dtype=float)
        if not is_orthogonal(R):
            raise NotOrthonormalError("isometry matrix is not orthogonal")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "t", _vector(self.t, R.shape[0], "t"))

    @property
    def n(self):
        return self.R.shape[0]

    @classmethod
    def identity(cls, n):
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def random(cls, n, rng, spread=1.0):
        from .linalg import random_orthogonal
        return cls(random_orthogonal(n, rng), spread * rng.uniform(-1, 1, n))

    def __call__(self, x):
        return np.asarray(x, dtype=float) @ self.R.T + self.t

    def inverse(self):
        return Isometry(self.R.T, -self.R.T @ self.t)

    def then(self, other):
        """Composite map: apply ``self`` first, then ``other``."""
        return Isometry(other.R @ self.R, other.R @ self.t + other.t)

    def to_dict(self):
        return {"R": self.R.tolist(), "t": self.t.tolist()}


def transform(Q, T):
    """Express ``Q`` in the coordinates ``x' = T(x)``.

    The result ``Q'`` satisfies ``Q'(T(x)) == Q(x)``.
    """
    if Q.n != T.n:
        raise InvalidInputError("dimension mismatch between quadric and isometry")
    A = T.R @ Q.A @ T.R.T
    Rb = T.R @ Q.b
    b = Rb - A @ T.t
    c = T.t @ A @ T.t - 2.0 * Rb @ T.t + Q.c
    return QuadricCoeffs(A, b, c)


@dataclass(frozen=True, eq=False)
class Hyperplane:
    """``{x : x . u = delta}`` with an orthonormal in-plane frame.

    ``frame`` has shape (n, n-1); a point ``y`` in frame coordinates sits at
    ``origin + frame @ y`` where ``origin = delta * u``.
    """

    u: np.ndarray
    delta: float
    frame: np.ndarray = field(default=None)

    def __post_init__(self):
        u = _vector(self.u, name="u")
        norm = np.linalg.norm(u)
        if norm == 0:
            raise InvalidInputError("hyperplane normal must be nonzero")
        if abs(norm - 1.0) > 1e-12:
            raise InvalidInputError("hyperplane normal must be a unit vector; use Hyperplane.from_normal")
        frame = self.frame
        if frame is None:
            frame = complete_frame([u])[:, 1:]
        frame = np.array(frame, dtype=float).reshape(u.size, u.size - 1)
        if np.max(np.abs(frame.T @ u), initial=0.0) > 1e-10 or \
                np.max(np.abs(frame.T @ frame - np.eye(u.size - 1)), initial=0.0) > 1e-10:
            raise NotOrthonormalError("hyperplane frame must be orthonormal and orthogonal to u")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "delta", float(self.delta))
        object.__setattr__(self, "frame", frame)

    @classmethod
    def from_normal(cls, w, offset):
        """Hyperplane ``{x : x . w = offset}`` for a normal of any length."""
        w = _vector(w, name="normal")
        norm = np.linalg.norm(w)
        if norm == 0:
            raise InvalidInputError("hyperplane normal must be nonzero")
        return cls(w / norm, offset / norm)

    @property
    def n(self):
        return self.u.size

    @property
    def origin(self):
        return self.delta * self.u

    def signed_distance(self, x):
        return np.asarray(x, dtype=float) @ self.u - self.delta

    def to_frame(self, x):
        """Frame coordinates of (the projection of) ``x``."""
        return (np.asarray(x, dtype=float) - self.origin) @ self.frame

    def from_frame(self, y):
        return self.origin + np.asarray(y, dtype=float) @ self.frame.T

    def to_dict(self):
        return {"u": self.u.tolist(), "delta": self.delta, "frame": self.frame.tolist()}

    @classmethod
    def from_dict(cls, d):
        try:
            u = np.asarray(d["u"], dtype=float)
            delta = float(d.get("delta", 0.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"bad hyperplane JSON: {exc}") from exc
        norm = np.linalg.norm(u)
        if norm == 0:
            raise InvalidInputError("hyperplane normal must be nonzero")
        frame = d.get("frame")
        if frame is not None and abs(norm - 1.0) <= 1e-12:
            return cls(u, delta, np.asarray(frame, dtype=float))
        # a non-unit normal is read literally as {x : x . u = delta}
        return cls.from_normal(u, delta) if abs(norm - 1.0) > 1e-12 else cls(u, delta)
