"""Dense symmetric linear algebra used throughout the package.

The eigensolver is a plain cyclic Jacobi iteration.  It is slow compared to
LAPACK but accurate, deterministic and more than fast enough for the matrix
sizes that occur here (a few dozen at most).
"""

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, InvalidInputError, NotOrthonormalError

MAX_SWEEPS = 100


class EigenDecomp(NamedTuple):
    values: np.ndarray   # descending
    vectors: np.ndarray  # columns


def sym(A):
    """Return ``A`` as a float array, symmetrized by averaging with its transpose."""
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"expected a square matrix, got shape {A.shape}")
    return 0.5 * (A + A.T)


def _normalize_signs(V):
    # largest-magnitude entry of each column made positive; argmax picks the lowest index on ties
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def eig_sym(A, tol=1e-14):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Parameters
    ----------
    A : array_like, shape (n, n)
        Symmetrized on entry.
    tol : float
        Sweeps stop once the off-diagonal Frobenius norm drops below
        ``tol * ||A||_F``.

    Returns
    -------
    EigenDecomp
        Eigenvalues sorted descending (ties broken by original index) and the
        matching orthonormal eigenvectors as columns.  Each eigenvector is
        signed so that its largest-magnitude entry is positive.
    """
    A = sym(A)
    n = A.shape[0]
    if n == 0:
        raise InvalidInputError("empty matrix")
    V = np.eye(n)
    scale = np.linalg.norm(A)
    threshold = tol * scale

    for _ in range(MAX_SWEEPS):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if apq == 0.0:
                    continue
                with np.errstate(over="ignore"):  # subnormal apq; handled below
                    tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 0.5 / tau
                elif tau >= 0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                J = np.array([[c, s], [-s, c]])
                pq = [p, q]
                A[:, pq] = A[:, pq] @ J
                A[pq, :] = J.T @ A[pq, :]
                A[p, q] = A[q, p] = 0.0
                V[:, pq] = V[:, pq] @ J
    else:
        raise ConvergenceError()

    w = np.diag(A).copy()
    order = np.argsort(-w, kind="stable")
    return EigenDecomp(w[order], _normalize_signs(V[:, order]))


def signature(eigs, tol_rel=1e-9):
    """Count positive, negative and zero eigenvalues.

    An eigenvalue is treated as zero when ``|lam| <= tol_rel * max|lam|``.
    """
    eigs = np.asarray(eigs, dtype=float)
    if eigs.size == 0:
        raise InvalidInputError("empty eigenvalue list")
    big = np.max(np.abs(eigs))
    if big == 0.0:
        return 0, 0, eigs.size
    nonzero = np.abs(eigs) > tol_rel * big
    p = int(np.sum(nonzero & (eigs > 0)))
    q = int(np.sum(nonzero & (eigs < 0)))
    return p, q, eigs.size - p - q


def zero_mask(eigs, tol_rel=1e-9):
    eigs = np.asarray(eigs, dtype=float)
    big = np.max(np.abs(eigs)) if eigs.size else 0.0
    return np.abs(eigs) <= tol_rel * big


def complete_frame(vectors, n=None, tol=1e-10):
    """Extend orthonormal vectors to an orthogonal n x n matrix.

    The given vectors become the leading columns.  Remaining columns come from
    Gram-Schmidt on the standard basis, always taking the axis with the
    largest residual (lowest index on ties), so the result is deterministic.
    """
    vecs = [np.asarray(v, dtype=float).ravel() for v in vectors]
    if n is None:
        if not vecs:
            raise InvalidInputError("dimension required for an empty vector list")
        n = vecs[0].size
    if any(v.size != n for v in vecs):
        raise InvalidInputError("vector dimensions disagree")
    if len(vecs) > n:
        raise NotOrthonormalError()
    W = np.column_stack(vecs) if vecs else np.zeros((n, 0))
    if np.max(np.abs(W.T @ W - np.eye(W.shape[1])), initial=0.0) > tol:
        raise NotOrthonormalError()

    cols = list(W.T)
    while len(cols) < n:
        B = np.column_stack(cols) if cols else np.zeros((n, 0))
        R = np.eye(n) - B @ (B.T @ np.eye(n))
        R = R - B @ (B.T @ R)
        norms = np.linalg.norm(R, axis=0)
        j = int(np.argmax(norms))
        cols.append(R[:, j] / norms[j])
    return np.column_stack(cols)


def is_orthogonal(R, tol=1e-10):
    R = np.asarray(R, dtype=float)
    return R.ndim == 2 and R.shape[0] == R.shape[1] and \
        np.max(np.abs(R.T @ R - np.eye(R.shape[0]))) <= tol


def random_orthogonal(n, rng):
    """Haar-distributed orthogonal matrix."""
    Z = rng.standard_normal((n, n))
    Qm, Rm = np.linalg.qr(Z)
    return Qm * np.sign(np.diag(Rm))
