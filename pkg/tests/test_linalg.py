import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from convquad.errors import InvalidInputError, NotOrthonormalError
from convquad.linalg import complete_frame, eig_sym, is_orthogonal, random_orthogonal, signature, sym

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


@st.composite
def symmetric(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    M = draw(arrays(float, (n, n), elements=finite))
    return M + M.T


def test_identity():
    w, V = eig_sym(np.eye(3))
    assert np.allclose(w, 1.0)
    assert np.allclose(V, np.eye(3))


def test_diagonal_keeps_axes():
    w, V = eig_sym(np.diag([2.0, -1.0]))
    assert np.allclose(w, [2.0, -1.0])
    assert np.allclose(np.abs(V), np.eye(2))


def test_off_diagonal_half():
    w, V = eig_sym([[0.0, 0.5], [0.5, 0.0]])
    assert np.allclose(w, [0.5, -0.5], atol=1e-15)
    s = 1 / np.sqrt(2)
    assert np.allclose(V[:, 0], [s, s])


def test_sign_convention_and_order():
    rng = np.random.default_rng(3)
    M = rng.standard_normal((6, 6))
    w, V = eig_sym(M + M.T)
    assert np.all(np.diff(w) <= 0)
    idx = np.argmax(np.abs(V), axis=0)
    assert np.all(V[idx, np.arange(6)] > 0)


def test_repeated_eigenvalues_deterministic():
    A = np.diag([1.0, 3.0, 1.0, 3.0])
    w1, V1 = eig_sym(A)
    w2, V2 = eig_sym(A.copy())
    assert np.array_equal(w1, w2) and np.array_equal(V1, V2)
    assert np.allclose(w1, [3, 3, 1, 1])
    # ties broken by original index
    assert np.allclose(np.abs(V1[:, 0]), [0, 1, 0, 0])
    assert np.allclose(np.abs(V1[:, 1]), [0, 0, 0, 1])


@given(symmetric())
def test_decomposition_invariants(A):
    w, V = eig_sym(A)
    n = len(w)
    scale = max(1.0, np.max(np.abs(A)))
    assert np.max(np.abs(V.T @ V - np.eye(n))) <= 1e-12
    assert np.max(np.abs(A @ V - V * w)) <= 1e-10 * max(scale, np.max(np.abs(w)))
    assert np.all(np.diff(w) <= 0)


@given(symmetric())
def test_matches_lapack(A):
    w, _ = eig_sym(A)
    ref = np.linalg.eigvalsh(A)[::-1]
    assert np.allclose(w, ref, atol=1e-10 * max(1.0, np.max(np.abs(A))))


def test_thousand_random_reconstructions():
    rng = np.random.default_rng(11)
    worst = 0.0
    for _ in range(1000):
        n = rng.integers(1, 9)
        M = rng.standard_normal((n, n)) * 10 ** rng.uniform(-3, 3)
        A = M + M.T
        w, V = eig_sym(A)
        err = np.max(np.abs(A - (V * w) @ V.T)) / max(1.0, np.max(np.abs(A)))
        worst = max(worst, err)
    assert worst <= 1e-9


def test_larger_matrix():
    rng = np.random.default_rng(5)
    M = rng.standard_normal((32, 32))
    A = M + M.T
    w, V = eig_sym(A)
    assert np.allclose(w, np.linalg.eigvalsh(A)[::-1], atol=1e-10)


def test_sym_rejects_non_square():
    with pytest.raises(InvalidInputError):
        sym(np.zeros((2, 3)))
    with pytest.raises(InvalidInputError):
        eig_sym(np.zeros((0, 0)))


@pytest.mark.parametrize("eigs, tol, expected", [
    ((2.0, -1.0, 0.0), 1e-9, (1, 1, 1)),
    ((1e-15, 1.0), 1e-9, (1, 0, 1)),
    ((3.0, 2.0, 1.0), 1e-9, (3, 0, 0)),
    ((0.0, 0.0), 1e-9, (0, 0, 2)),
])
def test_signature_examples(eigs, tol, expected):
    assert signature(eigs, tol) == expected


def test_signature_empty():
    with pytest.raises(InvalidInputError):
        signature([])


@given(st.integers(1, 7), st.integers(0, 2 ** 32 - 1))
def test_sylvester_inertia(n, seed):
    rng = np.random.default_rng(seed)
    d = rng.choice([-1.0, 0.0, 1.0], n) * rng.uniform(0.5, 2.0, n)
    R = random_orthogonal(n, rng)
    A = R @ np.diag(d) @ R.T
    expected = (int(np.sum(d > 0)), int(np.sum(d < 0)), int(np.sum(d == 0)))
    assert signature(eig_sym(A).values) == expected


def test_complete_frame_examples():
    F = complete_frame([[1.0, 0.0, 0.0]])
    assert np.allclose(F[:, 0], [1, 0, 0]) and is_orthogonal(F)
    assert np.array_equal(complete_frame([], n=2), np.eye(2))
    s = 1 / np.sqrt(2)
    F = complete_frame([[s, s]])
    assert np.allclose(np.abs(F[:, 1]), [s, s]) and abs(F[0, 1] + F[1, 1]) < 1e-12


def test_complete_frame_rejects_non_orthonormal():
    with pytest.raises(NotOrthonormalError, match="not orthonormal"):
        complete_frame([[1.0, 0.0], [1.0, 1.0]])
    with pytest.raises(NotOrthonormalError):
        complete_frame([[2.0, 0.0]])


@given(st.integers(1, 8), st.integers(0, 8), st.integers(0, 2 ** 32 - 1))
def test_complete_frame_property(n, m, seed):
    m = min(m, n)
    rng = np.random.default_rng(seed)
    W = random_orthogonal(n, rng)[:, :m]
    F = complete_frame(list(W.T), n=n)
    assert np.max(np.abs(F.T @ F - np.eye(n))) <= 1e-10
    assert np.allclose(F[:, :m], W)
