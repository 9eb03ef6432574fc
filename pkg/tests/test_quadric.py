import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from convquad.errors import DegenerateQuadricError, InvalidInputError, NotOrthonormalError
from convquad.quadric import Hyperplane, Isometry, QuadricCoeffs, evaluate, scale_equation, transform

seeds = st.integers(0, 2 ** 32 - 1)


def random_quadric(n, rng):
    M = rng.standard_normal((n, n))
    return QuadricCoeffs(M + M.T, rng.standard_normal(n), rng.standard_normal())


def sphere(n):
    return QuadricCoeffs(np.eye(n), np.zeros(n), -1.0)


def test_evaluate_examples():
    S = sphere(3)
    assert evaluate(S, np.zeros(3)) == -1.0
    assert evaluate(S, [1.0, 0.0, 0.0]) == 0.0
    H = QuadricCoeffs(np.diag([1.0, -1.0]), [0.0, 0.0], -1.0)
    assert evaluate(H, [2.0, 1.0]) == 2.0


def test_evaluate_stack_and_mismatch():
    S = sphere(2)
    X = np.array([[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]])
    assert np.allclose(S(X), [-1.0, 0.0, 3.0])
    with pytest.raises(InvalidInputError, match="dimension mismatch"):
        evaluate(S, [1.0, 2.0, 3.0])


def test_factor_two_convention():
    Q = QuadricCoeffs([[0.0, 1.0], [1.0, 0.0]], [3.0, 0.0], 0.0)
    # x^T A x + 2 b^T x = 2 x y + 6 x
    assert evaluate(Q, [1.0, 2.0]) == 10.0


def test_rejects_zero_quadratic_part():
    with pytest.raises(DegenerateQuadricError, match="degree < 2"):
        QuadricCoeffs(np.zeros((2, 2)), [1.0, 0.0], 0.0)


def test_asymmetric_input_is_averaged():
    Q = QuadricCoeffs([[1.0, 2.0], [0.0, 1.0]], [0.0, 0.0], 0.0)
    assert np.array_equal(Q.A, [[1.0, 1.0], [1.0, 1.0]])


def test_json_round_trip():
    rng = np.random.default_rng(1)
    Q = random_quadric(4, rng)
    Q2 = QuadricCoeffs.from_dict(json.loads(json.dumps(Q.to_dict())))
    assert np.array_equal(Q.A, Q2.A) and np.array_equal(Q.b, Q2.b) and Q.c == Q2.c


def test_json_schema_errors():
    with pytest.raises(InvalidInputError):
        QuadricCoeffs.from_dict({"b": [0.0]})
    with pytest.raises(InvalidInputError):
        QuadricCoeffs.from_dict({"n": 3, "A": [[1.0]], "b": [0.0], "c": 0})
    with pytest.raises(InvalidInputError):
        QuadricCoeffs.from_dict({"A": [[1.0, 0.0]], "b": [0.0], "c": 0})


@given(st.integers(1, 6), seeds)
def test_theta_round_trip(n, seed):
    Q = random_quadric(n, np.random.default_rng(seed))
    Q2 = QuadricCoeffs.from_theta(Q.theta(), n)
    assert np.allclose(Q.A, Q2.A) and np.allclose(Q.b, Q2.b) and np.isclose(Q.c, Q2.c)


def test_transform_identity():
    rng = np.random.default_rng(2)
    Q = random_quadric(3, rng)
    Q2 = transform(Q, Isometry.identity(3))
    assert np.allclose(Q.A, Q2.A) and np.allclose(Q.b, Q2.b) and np.isclose(Q.c, Q2.c)


def test_translated_sphere():
    t = np.array([1.0, -2.0, 0.5])
    Q = transform(sphere(3), Isometry(np.eye(3), t))
    assert np.allclose(Q.A, np.eye(3))
    assert np.allclose(Q.b, -t)
    assert np.isclose(Q.c, t @ t - 1.0)
    x = np.array([0.3, 0.1, -0.7])
    assert np.isclose(evaluate(Q, x + t), evaluate(sphere(3), x))


@given(st.integers(1, 6), seeds)
def test_pullback_identity(n, seed):
    rng = np.random.default_rng(seed)
    Q = random_quadric(n, rng)
    T = Isometry.random(n, rng, spread=3.0)
    X = rng.uniform(-3, 3, (100, n))
    Qt = transform(Q, T)
    assert np.allclose(evaluate(Qt, T(X)), evaluate(Q, X), atol=1e-9 * (1 + np.abs(evaluate(Q, X))))


def test_pullback_thousand_triples():
    rng = np.random.default_rng(9)
    for _ in range(1000):
        n = int(rng.integers(1, 6))
        Q = random_quadric(n, rng)
        T = Isometry.random(n, rng, 2.0)
        x = rng.uniform(-2, 2, n)
        assert abs(evaluate(transform(Q, T), T(x)) - evaluate(Q, x)) <= 1e-9 * max(1.0, Q.scale() * (1 + x @ x))


@given(st.integers(1, 5), seeds)
def test_transform_composes(n, seed):
    rng = np.random.default_rng(seed)
    Q = random_quadric(n, rng)
    T1, T2 = Isometry.random(n, rng), Isometry.random(n, rng)
    a = transform(transform(Q, T1), T2)
    b = transform(Q, T1.then(T2))
    assert np.allclose(a.A, b.A, atol=1e-9) and np.allclose(a.b, b.b, atol=1e-9)
    assert np.isclose(a.c, b.c, atol=1e-9)


def test_isometry_inverse():
    rng = np.random.default_rng(4)
    T = Isometry.random(4, rng)
    x = rng.standard_normal(4)
    assert np.allclose(T.inverse()(T(x)), x)
    with pytest.raises(NotOrthonormalError):
        Isometry(np.diag([1.0, 2.0]), [0.0, 0.0])


def test_scale_equation():
    Q = QuadricCoeffs(np.diag([1.0, -1.0]), [0.0, 0.0], 0.0)
    assert np.array_equal(scale_equation(Q, 1.0).A, Q.A)
    assert np.array_equal(scale_equation(Q, -1.0).A, np.diag([-1.0, 1.0]))
    with pytest.raises(InvalidInputError, match="zero scale"):
        scale_equation(Q, 0.0)


def test_scale_equation_keeps_zero_set():
    rng = np.random.default_rng(8)
    S = sphere(3)
    X = rng.standard_normal((100, 3))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    for s in (-3.0, 0.25, 7.0):
        assert np.allclose(evaluate(scale_equation(S, s), X), 0.0, atol=1e-12)


def test_hyperplane_frame():
    rng = np.random.default_rng(6)
    u = rng.standard_normal(5)
    H = Hyperplane.from_normal(u, 2.0)
    assert np.isclose(np.linalg.norm(H.u), 1.0)
    assert np.allclose(H.frame.T @ H.u, 0.0, atol=1e-12)
    assert np.allclose(H.frame.T @ H.frame, np.eye(4), atol=1e-12)
    y = rng.standard_normal(4)
    x = H.from_frame(y)
    assert np.isclose(H.signed_distance(x), 0.0, atol=1e-12)
    assert np.allclose(H.to_frame(x), y)
    assert np.allclose(H.origin, H.delta * H.u)


def test_hyperplane_validation():
    with pytest.raises(InvalidInputError):
        Hyperplane([2.0, 0.0], 1.0)
    with pytest.raises(InvalidInputError):
        Hyperplane.from_normal([0.0, 0.0], 1.0)
    with pytest.raises(NotOrthonormalError):
        Hyperplane([1.0, 0.0], 0.0, frame=[[1.0], [0.0]])


def test_hyperplane_json():
    H = Hyperplane.from_dict({"u": [0.0, 0.0, 2.0], "delta": 1.0})
    assert np.allclose(H.u, [0, 0, 1]) and np.isclose(H.delta, 0.5)
    H2 = Hyperplane.from_dict(json.loads(json.dumps(H.to_dict())))
    assert np.allclose(H2.frame, H.frame) and H2.delta == H.delta
