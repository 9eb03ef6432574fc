import numpy as np
import pytest
from hypothesis import given, strategies as st

from convquad.canonical import (CanonicalForm, canonical_shapes, canonical_to_coeffs, canonicalize,
                                random_form, reconstruct, sample_canonical, sample_points)
from convquad.errors import EmptyLocusError, InvalidInputError
from convquad.quadric import Isometry, QuadricCoeffs, evaluate, scale_equation, transform

seeds = st.integers(0, 2 ** 32 - 1)


def disguise(F, rng):
    """Canonical equation of ``F`` moved by a random isometry and a random nonzero scale."""
    Q = transform(canonical_to_coeffs(F), F.to_canonical.inverse())
    s = rng.uniform(0.1, 10.0) * rng.choice([-1.0, 1.0])
    return scale_equation(Q, s)


def same_shape(F, G, rtol=1e-7):
    return F.shape == G.shape and np.allclose(F.a, G.a, rtol=rtol, atol=0)


def test_scaled_unit_circle():
    F = canonicalize(QuadricCoeffs(2 * np.eye(2), [0.0, 0.0], -2.0))
    assert F.shape == ("A", 2, 2) and np.allclose(F.a, [1, 1])


def test_rectangular_hyperbola():
    F = canonicalize(QuadricCoeffs([[0, 0.5], [0.5, 0]], [0.0, 0.0], -0.5))
    assert F.shape == ("B", 1, 2) and np.allclose(F.a, [1, 1])
    # the axes are rotated by 45 degrees
    assert np.allclose(np.abs(F.to_canonical.R), np.full((2, 2), 1 / np.sqrt(2)))


@pytest.mark.parametrize("n", [1, 2, 4])
def test_double_hyperplane(n):
    A = np.zeros((n, n))
    A[0, 0] = 1.0
    F = canonicalize(QuadricCoeffs(A, np.zeros(n), 0.0))
    assert F.shape == ("C", 1, 1)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_elliptic_paraboloid(n):
    b = np.zeros(n)
    b[-1] = -0.5
    F = canonicalize(QuadricCoeffs(np.diag([1.0] * (n - 1) + [0.0]), b, 0.0))
    assert F.shape == ("E", n - 1, n) and np.allclose(F.a, 1.0)


def test_canonical_to_coeffs_examples():
    Q = canonical_to_coeffs(CanonicalForm("A", 3, 3, 3, [1, 1, 1]))
    assert np.array_equal(Q.A, np.eye(3)) and np.array_equal(Q.b, np.zeros(3)) and Q.c == -1
    Q = canonical_to_coeffs(CanonicalForm("E", 2, 1, 2, [1]))
    assert np.array_equal(Q.A, np.diag([1.0, 0.0])) and np.array_equal(Q.b, [0, -0.5]) and Q.c == 0
    Q = canonical_to_coeffs(CanonicalForm("D", 2, 1, 2, [1, 1]))
    assert np.array_equal(Q.A, np.diag([1.0, -1.0])) and Q.c == 0


@pytest.mark.parametrize("Q", [
    QuadricCoeffs([[1.0]], [0.0], 1.0),
    QuadricCoeffs(np.eye(3), np.zeros(3), 2.0),
    QuadricCoeffs(-np.eye(2), [1.0, 0.0], -5.0),
])
def test_empty_locus(Q):
    with pytest.raises(EmptyLocusError, match="empty real locus"):
        canonicalize(Q)


def test_negative_definite_cone_is_point():
    F = canonicalize(QuadricCoeffs(-np.eye(3), np.zeros(3), 0.0))
    assert F.shape == ("C", 3, 3)


@pytest.mark.parametrize("args", [
    ("A", 3, 2, 3, [1, 1]), ("B", 3, 2, 2, [1, 1]), ("D", 3, 2, 3, [1, 1, 1]),
    ("E", 4, 1, 4, [1, 1, 1]), ("A", 2, 2, 2, [1, -1]), ("Z", 2, 1, 1, [1]), ("A", 2, 2, 2, [1]),
])
def test_form_invariants_enforced(args):
    with pytest.raises(InvalidInputError):
        CanonicalForm(*args)


def test_shape_enumeration():
    assert len(canonical_shapes(2)) == 7
    assert len(canonical_shapes(3)) == 21 - 7
    for n in range(1, 7):
        shapes = canonical_shapes(n)
        assert len(set(shapes)) == len(shapes)
        for fam, k, r in shapes:
            CanonicalForm(fam, n, k, r, np.ones(k if fam in "AC" else r - (fam == "E")))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_round_trip_every_shape(n):
    rng = np.random.default_rng(100 + n)
    for fam, k, r in canonical_shapes(n):
        for _ in range(5):
            F = random_form(fam, n, k, r, rng)
            G = canonicalize(disguise(F, rng))
            assert same_shape(F, G), (F, G)


@given(st.integers(2, 6), seeds)
def test_reconstruction_matches_input(n, seed):
    rng = np.random.default_rng(seed)
    shapes = canonical_shapes(n)
    fam, k, r = shapes[rng.integers(len(shapes))]
    Q = disguise(random_form(fam, n, k, r, rng), rng)
    R = reconstruct(canonicalize(Q))
    assert np.allclose(R.theta(), Q.theta(), atol=1e-8 * Q.scale())


@given(st.integers(2, 6), seeds)
def test_invariant_under_scale_and_isometry(n, seed):
    rng = np.random.default_rng(seed)
    shapes = canonical_shapes(n)
    fam, k, r = shapes[rng.integers(len(shapes))]
    Q = disguise(random_form(fam, n, k, r, rng), rng)
    Q2 = scale_equation(transform(Q, Isometry.random(n, rng, 3.0)), rng.uniform(-4, -0.2))
    assert same_shape(canonicalize(Q), canonicalize(Q2))


def test_zero_set_agreement():
    rng = np.random.default_rng(17)
    for n in (2, 3, 4):
        for fam, k, r in canonical_shapes(n):
            Q = disguise(random_form(fam, n, k, r, rng), rng)
            F = canonicalize(Q)
            X = sample_points(F, 200, rng)
            assert np.max(np.abs(evaluate(Q, X))) <= 1e-7 * Q.scale() * (1 + np.max(np.abs(X)) ** 2)


def test_samples_lie_on_canonical_locus():
    rng = np.random.default_rng(18)
    for fam, k, r in canonical_shapes(4):
        F = random_form(fam, 4, k, r, rng)
        Xi = sample_canonical(F, 50, rng)
        assert np.allclose(evaluate(canonical_to_coeffs(F), Xi), 0.0, atol=1e-10)


def test_d_and_e_orientation():
    # more positive than negative squares must flip for D; fewer must flip for E
    F = canonicalize(QuadricCoeffs(np.diag([1.0, 2.0, -3.0]), np.zeros(3), 0.0))
    assert F.shape == ("D", 1, 3) and np.allclose(F.a, [1.0, 2.0 / 3.0, 1.0 / 3.0])
    b = np.array([0.0, 0.0, 0.0, 1.0])
    F = canonicalize(QuadricCoeffs(np.diag([1.0, -2.0, -3.0, 0.0]), b, 0.0))
    # linear part is 2*xi4, so the squares are halved
    assert F.shape == ("E", 2, 4) and np.allclose(F.a, [1.5, 1.0, 0.5])


def test_orientation_tie_independent_of_sign():
    Q = QuadricCoeffs(np.diag([1.0, 3.0, -2.0, -0.5]), np.zeros(4), 0.0)
    F1, F2 = canonicalize(Q), canonicalize(scale_equation(Q, -1.0))
    assert same_shape(F1, F2, rtol=1e-12)
    assert np.allclose(F1.a, [1.0, 1 / 3, 2 / 3, 0.5 / 3])


def test_near_zero_eigenvalue_is_zero():
    Q = QuadricCoeffs(np.diag([1.0, 1e-13]), [0.0, 0.0], -1.0)
    assert canonicalize(Q).shape == ("A", 1, 1)


def test_form_json_round_trip():
    rng = np.random.default_rng(3)
    F = random_form("E", 4, 2, 4, rng)
    G = CanonicalForm.from_dict(F.to_dict())
    assert same_shape(F, G, rtol=0) and np.array_equal(G.to_canonical.R, F.to_canonical.R)
    assert G.eq_scale == F.eq_scale
