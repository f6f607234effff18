"""Tests of the complex-matrix primitives."""

import numpy as np
import pytest

from hybrid_precoding_sim.numerics import (
    as_cmatrix,
    frobenius_norm,
    hermitian_evd,
    solve_hpd,
    is_psd,
    NotHermitian,
    NotFinite,
    Singular,
    DimensionMismatch
)


def _random_hermitian(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a + a.conj().T


def _random_hpd(rng, n):
    a = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return a @ a.conj().T + n * np.eye(n)


class TestHermitianEvd:
    """Eigendecomposition sorted in descending order with fixed phases."""

    def test_diagonal(self):
        eigvals, eigvecs = hermitian_evd(np.diag([2.0, 1.0]))
        np.testing.assert_allclose(eigvals, [2.0, 1.0])
        np.testing.assert_allclose(eigvecs, np.eye(2), atol=1e-12)

    def test_rank_one(self):
        eigvals, eigvecs = hermitian_evd([[1, 1], [1, 1]])
        np.testing.assert_allclose(eigvals, [2.0, 0.0], atol=1e-12)
        np.testing.assert_allclose(eigvecs[:, 0], [1 / np.sqrt(2)] * 2, atol=1e-12)

    def test_identity(self):
        eigvals, eigvecs = hermitian_evd(np.eye(4))
        np.testing.assert_allclose(eigvals, np.ones(4))
        np.testing.assert_allclose(eigvecs.conj().T @ eigvecs, np.eye(4), atol=1e-12)

    def test_reconstruction(self):
        """U·diag(λ)·U^H gives back the matrix for random Hermitian inputs."""
        rng = np.random.default_rng(42)
        for _ in range(1000):
            n = int(rng.integers(1, 9))
            m = _random_hermitian(rng, n)
            eigvals, eigvecs = hermitian_evd(m)
            rebuilt = eigvecs @ np.diag(eigvals) @ eigvecs.conj().T
            assert frobenius_norm(rebuilt - m) <= 1e-10 * max(frobenius_norm(m), 1.0)
            assert np.all(np.diff(eigvals) <= 1e-12)

    def test_pivot_component_is_real_positive(self):
        rng = np.random.default_rng(42)
        _, eigvecs = hermitian_evd(_random_hermitian(rng, 6))
        pivots = eigvecs[np.argmax(np.abs(eigvecs), axis=0), np.arange(6)]
        np.testing.assert_allclose(pivots.imag, 0, atol=1e-12)
        assert np.all(pivots.real > 0)

    def test_psd_input_has_nonnegative_eigenvalues(self):
        rng = np.random.default_rng(42)
        a = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
        eigvals, _ = hermitian_evd(a @ a.conj().T)
        assert eigvals.min() >= -1e-10 * eigvals.max()

    def test_not_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_evd([[1, 2], [0, 1]])

    def test_not_finite(self):
        with pytest.raises(NotFinite):
            hermitian_evd([[1, np.nan], [np.nan, 1]])

    def test_not_square(self):
        with pytest.raises(DimensionMismatch):
            hermitian_evd(np.ones((2, 3)))


class TestSolveHpd:

    def test_diagonal_system(self):
        np.testing.assert_allclose(solve_hpd([[2, 0], [0, 4]], [2, 4]), [1, 1])

    def test_vector_stays_vector(self):
        assert solve_hpd(np.eye(3), np.ones(3)).shape == (3,)

    def test_matrix_right_hand_side(self):
        x = solve_hpd(2 * np.eye(2), np.eye(2))
        np.testing.assert_allclose(x, 0.5 * np.eye(2))

    def test_residual(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = _random_hpd(rng, 6)
            b = rng.standard_normal((6, 2)) + 1j * rng.standard_normal((6, 2))
            x = solve_hpd(a, b)
            assert frobenius_norm(a @ x - b) <= 1e-10 * frobenius_norm(b)

    def test_indefinite_hermitian_falls_back(self):
        x = solve_hpd(np.diag([1.0, -2.0]), [1.0, 1.0])
        np.testing.assert_allclose(x, [1.0, -0.5])

    def test_singular(self):
        with pytest.raises(Singular):
            solve_hpd([[1, 1], [1, 1]], [1, 0])

    def test_zero_matrix(self):
        with pytest.raises(Singular):
            solve_hpd(np.zeros((2, 2)), [1, 0])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            solve_hpd(np.eye(2), np.ones(3))


class TestFrobeniusNorm:

    def test_examples(self):
        assert frobenius_norm([[3, 4]]) == pytest.approx(5.0)
        assert frobenius_norm([[1j, 1], [1, -1j]]) == pytest.approx(2.0)
        assert frobenius_norm(np.zeros((3, 3))) == 0.0

    def test_matches_numpy(self):
        rng = np.random.default_rng(42)
        m = rng.standard_normal((4, 5)) + 1j * rng.standard_normal((4, 5))
        assert frobenius_norm(m) == pytest.approx(np.linalg.norm(m, 'fro'))


class TestHelpers:

    def test_as_cmatrix_promotes_vectors(self):
        assert as_cmatrix([1, 2, 3]).shape == (3, 1)
        assert as_cmatrix([[1, 2]]).dtype == np.complex128

    def test_as_cmatrix_rejects_empty(self):
        with pytest.raises(DimensionMismatch):
            as_cmatrix([])

    def test_is_psd(self):
        assert is_psd(np.eye(3))
        assert is_psd(np.zeros((2, 2)))
        assert not is_psd(np.diag([1.0, -1.0]))
