"""Section scan: cut a convex body by a continuous family of hyperplanes.

For each direction ``u`` the hyperplane ``H(u) = {x : x.u = delta(u)}`` is
classified as proper, support or miss.  Proper sections are sampled by ray
casting, a quadric is fitted through the samples, and the fit is
canonicalized and checked for being a convex quadric.  The report's verdict
is ``all_quadric`` when every proper section passes, otherwise it names the
worst direction.  This is a falsifiable test, not a proof.
"""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .bodies import closest_approach, section_boundary_sample, slice_interior_point
from .canonical import canonicalize
from .convexity import is_convex_quadric
from .errors import QuadricError
from .geometry import fit_quadric, n_coeffs, section
from .quadric import Hyperplane

SUPPORT_TOL = 1e-9


@dataclass
class DirectionResult:
    index: int
    u: np.ndarray
    delta: float
    status: str  # proper | support | miss
    residual: float = None
    family: str = None
    k: int = None
    r: int = None
    convex_section: bool = None
    error: str = None

    @property
    def passed(self):
        return self.status != "proper" or (self.error is None and self.convex_section)

    def to_dict(self):
        return {"index": self.index, "u": self.u.tolist(), "delta": self.delta, "status": self.status,
                "residual": self.residual, "family": self.family, "k": self.k, "r": self.r,
                "convex_section": self.convex_section, "error": self.error}


@dataclass
class ScanReport:
    n_dirs: int
    per_direction: list
    max_residual: float
    verdict: str  # all_quadric | violation
    violation: dict
    threshold: float
    seed: int

    def counts(self):
        out = {}
        for d in self.per_direction:
            out[d.status] = out.get(d.status, 0) + 1
        return out

    def to_dict(self):
        return {"n_dirs": self.n_dirs, "seed": self.seed, "threshold": self.threshold,
                "verdict": self.verdict, "violation": self.violation,
                "max_residual": self.max_residual, "status_counts": self.counts(),
                "per_direction": [d.to_dict() for d in self.per_direction]}

    def write_csv(self, path):
        n = len(self.per_direction[0].u) if self.per_direction else 0
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow([f"u{i + 1}" for i in range(n)] + ["delta", "status", "residual"])
            for d in self.per_direction:
                w.writerow(list(d.u) + [d.delta, d.status, "" if d.residual is None else d.residual])


def sphere_directions(n, count, seed=0):
    """Quasi-uniform unit vectors: a Fibonacci lattice for ``n = 3``, normalized Gaussians otherwise."""
    if n == 3:
        i = np.arange(count) + 0.5
        z = 1.0 - 2.0 * i / count
        phi = i * math.pi * (3.0 - math.sqrt(5.0))
        rad = np.sqrt(1.0 - z * z)
        return np.column_stack([rad * np.cos(phi), rad * np.sin(phi), z])
    rng = np.random.default_rng(seed)
    U = rng.standard_normal((count, n))
    return U / np.linalg.norm(U, axis=1, keepdims=True)


def default_points(n):
    return 3 * n_coeffs(n - 1)


def _hyperplane(u, delta):
    return Hyperplane(u / np.linalg.norm(u), float(delta))


def classify_hyperplane(B, H):
    """``(status, interior point of the slice or None)``."""
    p = slice_interior_point(B, H)
    if p is not None:
        return "proper", p
    return ("support" if closest_approach(B, H) <= SUPPORT_TOL else "miss"), None


def _sample_section(B, H, m_pts, seed, index, origin):
    rng = np.random.default_rng([seed, index])
    X = section_boundary_sample(B, H, m_pts, rng=rng, origin=origin)
    return H.to_frame(X)


def _scan_one(B, delta, u, index, m_pts, seed):
    H = _hyperplane(u, delta(u))
    res = DirectionResult(index, H.u, H.delta, "proper")
    try:
        status, origin = classify_hyperplane(B, H)
        res.status = status
        if status != "proper":
            return res
        Y = _sample_section(B, H, m_pts, seed, index, origin)
        Q, res.residual = fit_quadric(Y)
        F = canonicalize(Q)
        res.family, res.k, res.r = F.family, F.k, F.r
        res.convex_section = is_convex_quadric(F) is not None
    except QuadricError as exc:
        res.error = f"{type(exc).__name__}: {exc}"
    return res


def scan(B, delta, n_dirs=200, m_pts=None, threshold=1e-6, seed=0, workers=1):
    """Scan ``B`` with the hyperplanes ``x.u = delta(u)``.

    Per-direction failures are recorded in the report and count as
    violations; they never abort the scan.
    """
    n = B.n
    m_pts = default_points(n) if m_pts is None else m_pts
    dirs = sphere_directions(n, n_dirs, seed)

    def work(i):
        return _scan_one(B, delta, dirs[i], i, m_pts, seed)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(work, range(n_dirs)))
    else:
        results = [work(i) for i in range(n_dirs)]
    results.sort(key=lambda d: d.index)

    residuals = [d.residual for d in results if d.residual is not None]
    max_res = max(residuals) if residuals else 0.0
    bad = [d for d in results if d.status == "proper" and
           (d.error is not None or not d.convex_section or d.residual > threshold)]
    if bad:
        worst = max(bad, key=lambda d: math.inf if d.residual is None else d.residual)
        verdict = "violation"
        violation = {"index": worst.index, "u": worst.u.tolist(),
                     "residual": worst.residual, "error": worst.error}
    else:
        verdict, violation = "all_quadric", None
    return ScanReport(n_dirs, results, max_res, verdict, violation, threshold, seed)


def _unit_theta(Q):
    th = Q.theta()
    return th / np.linalg.norm(th)


def cross_section_consistency(B, delta, n_dirs=100, m_pts=None, seed=0):
    """Largest disagreement between fitted and analytic sections of a quadric body.

    Both coefficient vectors are taken in the hyperplane frame, scaled to unit
    norm and sign-aligned; the deviation is the max absolute difference of
    their entries.
    """
    n = B.n
    m_pts = default_points(n) if m_pts is None else m_pts
    Qb = B.coeffs
    worst = 0.0
    for i, u in enumerate(sphere_directions(n, n_dirs, seed)):
        H = _hyperplane(u, delta(u))
        origin = slice_interior_point(B, H)
        if origin is None:
            continue
        Qfit, _ = fit_quadric(_sample_section(B, H, m_pts, seed, i, origin))
        exact = section(Qb, H)
        if exact.coeffs is None:
            continue
        a, b = _unit_theta(Qfit), _unit_theta(exact.coeffs)
        if a @ b < 0:
            b = -b
        worst = max(worst, float(np.max(np.abs(a - b))))
    return worst
