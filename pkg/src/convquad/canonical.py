"""Reduction of a quadric to one of the five canonical families.

Families, with ``P = a_1 xi_1^2 + ... + a_k xi_k^2`` the positive block and
``N`` the negative block of the remaining squares::

    A_k      P = 1                      k = r
    B_{k,r}  P - N = 1                  r squares in total
    C_k      P = 0                      k = r
    D_{k,r}  P - N = 0                  k <= r - k
    E_{k,r}  P - N = xi_r               r - 1 squares, k >= r - 1 - k

All ``a_i`` are positive.  For the homogeneous families C and D the
coefficients are only defined up to a common factor; they are normalized so
that ``a_1 = 1``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import EmptyLocusError, InvalidInputError
from .linalg import complete_frame, eig_sym, zero_mask
from .quadric import Isometry, QuadricCoeffs, scale_equation, transform

FAMILIES = ("A", "B", "C", "D", "E")


@dataclass(frozen=True, eq=False)
class CanonicalForm:
    family: str
    n: int
    k: int
    r: int
    a: np.ndarray
    to_canonical: Isometry = None
    eq_scale: float = 1.0

    def __post_init__(self):
        fam, n, k, r = self.family, int(self.n), int(self.k), int(self.r)
        if fam not in FAMILIES:
            raise InvalidInputError(f"unknown family {fam!r}")
        if fam in "AC":
            ok = 1 <= k == r <= n
        elif fam in "B":
            ok = 1 <= k < r <= n
        elif fam == "D":
            ok = 1 <= k < r <= n and k <= r - k
        else:
            ok = 1 <= k < r <= n and k >= r - 1 - k
        if not ok:
            raise InvalidInputError(f"invalid indices for family {fam}: n={n}, k={k}, r={r}")
        a = np.array(self.a, dtype=float).ravel()
        if a.size != _n_squares(fam, k, r):
            raise InvalidInputError(f"family {fam}{k},{r} needs {_n_squares(fam, k, r)} coefficients, got {a.size}")
        if np.any(a <= 0):
            raise InvalidInputError("canonical coefficients must be positive")
        T = self.to_canonical if self.to_canonical is not None else Isometry.identity(n)
        if T.n != n:
            raise InvalidInputError("isometry dimension mismatch")
        if self.eq_scale == 0:
            raise InvalidInputError("zero scale")
        for name, value in (("n", n), ("k", k), ("r", r), ("a", a), ("to_canonical", T),
                            ("eq_scale", float(self.eq_scale))):
            object.__setattr__(self, name, value)

    @property
    def n_squares(self):
        return _n_squares(self.family, self.k, self.r)

    @property
    def base_dim(self):
        """Dimension of the non-cylindrical part."""
        return self.k if self.family in "AC" else self.r

    @property
    def signs(self):
        s = -np.ones(self.n_squares)
        s[:self.k] = 1.0
        return s

    @property
    def shape(self):
        return self.family, self.k, self.r

    def label(self):
        return f"{self.family}_{self.k}" if self.family in "AC" else f"{self.family}_{self.k},{self.r}"

    def to_dict(self):
        return {
            "family": self.family,
            "n": self.n,
            "k": self.k,
            "r": self.r,
            "a": self.a.tolist(),
            "R": self.to_canonical.R.tolist(),
            "t": self.to_canonical.t.tolist(),
            "eq_scale": self.eq_scale,
        }

    @classmethod
    def from_dict(cls, d):
        try:
            n = int(d["n"])
            R = d.get("R")
            t = d.get("t")
            T = Isometry(np.eye(n) if R is None else R, np.zeros(n) if t is None else t)
            return cls(d["family"], n, int(d["k"]), int(d["r"]), d["a"], T, float(d.get("eq_scale", 1.0)))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"bad canonical form JSON: {exc}") from exc

    def __repr__(self):
        return f"CanonicalForm({self.label()}, n={self.n}, a={np.round(self.a, 6).tolist()})"


def _n_squares(family, k, r):
    if family in "AC":
        return k
    if family in "BD":
        return r
    return r - 1


def canonical_shapes(n):
    """All admissible ``(family, k, r)`` triples in ambient dimension ``n``."""
    out = []
    for k in range(1, n + 1):
        out.append(("A", k, k))
    for r in range(2, n + 1):
        out.extend(("B", k, r) for k in range(1, r))
    for k in range(1, n + 1):
        out.append(("C", k, k))
    for r in range(2, n + 1):
        out.extend(("D", k, r) for k in range(1, r) if k <= r - k)
    for r in range(2, n + 1):
        out.extend(("E", k, r) for k in range(1, r) if k >= r - 1 - k)
    return out


def canonical_to_coeffs(F):
    """Coefficients of the canonical equation, in canonical coordinates."""
    m = F.n_squares
    diag = np.zeros(F.n)
    diag[:m] = F.signs * F.a
    b = np.zeros(F.n)
    c = 0.0
    if F.family in "AB":
        c = -1.0
    elif F.family == "E":
        b[F.r - 1] = -0.5
    return QuadricCoeffs(np.diag(diag), b, c)


def reconstruct(F):
    """The quadric in original coordinates that ``F`` was derived from."""
    Q = transform(canonical_to_coeffs(F), F.to_canonical.inverse())
    return scale_equation(Q, F.eq_scale)


def _orient(d, fewer_positive):
    """Whether to negate the signed square coefficients ``d``.

    D wants no more positive than negative squares, E no fewer.  When the
    blocks have equal size the one with the lexicographically larger sorted
    magnitudes becomes the positive block, which does not depend on the
    sign the equation happened to be written with.
    """
    pos = np.sort(d[d > 0])[::-1]
    neg = np.sort(-d[d < 0])[::-1]
    if pos.size != neg.size:
        return pos.size > neg.size if fewer_positive else pos.size < neg.size
    return tuple(neg) > tuple(pos)


def canonicalize(Q, tol_rel=1e-9):
    """Reduce ``Q`` to canonical form by an isometry and an equation scale.

    The returned form satisfies ``Q(x) = eq_scale * Qc(to_canonical(x))``,
    where ``Qc`` is :func:`canonical_to_coeffs` of the form.

    Raises
    ------
    EmptyLocusError
        If the equation has no real solutions.
    """
    n = Q.n
    lam, V = eig_sym(Q.A)
    nz = ~zero_mask(lam, tol_rel)
    by = V.T @ Q.b
    shift = np.zeros(n)
    shift[nz] = by[nz] / lam[nz]
    completed = by[nz] ** 2 / lam[nz]
    cprime = Q.c - np.sum(completed)
    c_is_zero = abs(cprime) <= tol_rel * (abs(Q.c) + np.sum(np.abs(completed)))

    bk = by[~nz]
    beta = float(np.linalg.norm(bk))
    has_linear = beta > tol_rel * (np.linalg.norm(Q.A) + np.linalg.norm(Q.b))

    idx = np.flatnonzero(nz)
    if has_linear:
        family = "E"
        s = 2.0 * beta
        d = lam[nz] / s
        flip = _orient(d, fewer_positive=False)
    elif not c_is_zero:
        s = -cprime
        d = lam[nz] / s
        if not np.any(d > 0):
            raise EmptyLocusError()
        family = "A" if np.all(d > 0) else "B"
        flip = False
    else:
        s = 1.0
        d = lam[nz].copy()
        p, q = np.sum(d > 0), np.sum(d < 0)
        family = "C" if p == 0 or q == 0 else "D"
        flip = p == 0 if family == "C" else _orient(d, fewer_positive=True)
    if flip:
        s, d = -s, -d
    if family in "CD":
        top = np.max(d)
        d, s = d / top, s * top

    pos = idx[d > 0][np.argsort(-d[d > 0], kind="stable")]
    neg = idx[d < 0][np.argsort(d[d < 0], kind="stable")]
    coeff = dict(zip(idx, np.abs(d)))
    order = np.concatenate([pos, neg]).astype(int)
    a = np.array([coeff[i] for i in order])

    rows = [V[:, i] for i in order]
    t = [shift[i] for i in order]
    Vk = V[:, ~nz]
    if has_linear:
        w = bk / beta
        sgn = -1.0 if flip else 1.0
        rows.append(-sgn * (Vk @ w))
        t.append(-sgn * cprime / (2.0 * beta))
        K = complete_frame([w])[:, 1:]
        rows.extend((Vk @ K).T)
    else:
        rows.extend(Vk.T)
    t.extend([0.0] * (n - len(t)))
    T = Isometry(np.array(rows).reshape(n, n), np.array(t))

    k = len(pos)
    if family in "AC":
        r = k
    elif family in "BD":
        r = len(order)
    else:
        r = len(order) + 1
    return CanonicalForm(family, n, k, r, a, T, s)


def sample_canonical(F, m, rng, spread=2.0):
    """``m`` points on the canonical locus, in canonical coordinates.

    Squared coordinates of the positive block are solved for; every other
    coordinate is drawn at random (uniform on ``[-spread, spread]`` for the
    cylinder directions, Gaussian for the negative block).
    """
    n, k, ms = F.n, F.k, F.n_squares
    X = rng.uniform(-spread, spread, (m, n))
    neg = F.a[k:]
    N = np.sum(neg * X[:, k:ms] ** 2, axis=1)
    if F.family == "E":
        P = np.sum(F.a[:k] * X[:, :k] ** 2, axis=1)
        X[:, F.r - 1] = P - N
        return X
    if F.family == "C":
        X[:, :k] = 0.0
        return X
    rhs = N + (1.0 if F.family in "AB" else 0.0)
    dirs = rng.standard_normal((m, k))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    scale = np.sqrt(rhs / np.sum(F.a[:k] * dirs ** 2, axis=1))
    X[:, :k] = dirs * scale[:, None]
    return X


def sample_points(F, m, rng, spread=2.0):
    """``m`` points on the locus of ``F`` in the original coordinates."""
    return F.to_canonical.inverse()(sample_canonical(F, m, rng, spread))


def random_form(family, n, k, r, rng, a_range=(0.2, 5.0), spread=1.0):
    """A canonical form with random coefficients and a random placement."""
    a = rng.uniform(*a_range, _n_squares(family, k, r))
    pos, neg = np.sort(a[:k])[::-1], np.sort(a[k:])[::-1]
    if pos.size == neg.size and family in "DE" and tuple(neg) > tuple(pos):
        pos, neg = neg, pos
    a = np.concatenate([pos, neg])
    if family in "CD":
        a = a / a[0]
    return CanonicalForm(family, n, k, r, a, Isometry.random(n, rng, spread), 1.0)
