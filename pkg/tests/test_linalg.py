import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qmono.linalg import (
    PAULI_X,
    PAULI_Z,
    DensityMatrix,
    DomainError,
    StateError,
    hermitian_eigen,
    kron,
    partial_trace,
    psd_sqrt,
)
from qmono.states import GHZ, W, bell_phi_plus, haar_random_pure, random_mixed_three_qubit

from conftest import dm

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return m + m.conj().T


def random_density(n_qubits, seed):
    rng = np.random.default_rng(seed)
    d = 1 << n_qubits
    g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m))


class TestKron:
    def test_identity(self):
        assert_allclose(kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_scalar(self):
        b = np.array([[1, 2j], [3, 4]])
        assert_allclose(kron([[2.5]], b), 2.5 * b)

    def test_pauli_x_z(self):
        out = kron(PAULI_X, PAULI_Z)
        expected = np.zeros((4, 4))
        expected[0, 2], expected[1, 3], expected[2, 0], expected[3, 1] = 1, -1, 1, -1
        assert_allclose(out, expected)


class TestPartialTrace:
    def test_product_state(self, product_ab):
        ab, a, b = product_ab
        assert_allclose(partial_trace(ab, [0]).matrix, a.matrix, atol=1e-12)
        assert_allclose(partial_trace(ab, [1]).matrix, b.matrix, atol=1e-12)

    def test_bell(self, bell):
        assert_allclose(partial_trace(bell, [0]).matrix, np.eye(2) / 2, atol=1e-12)

    def test_ghz_trace_c(self):
        expected = np.zeros((4, 4))
        expected[0, 0] = expected[3, 3] = 0.5
        assert_allclose(GHZ.reduced([0, 1]).matrix, expected, atol=1e-12)

    def test_keep_order_swaps_qubits(self, product_ab):
        ab, a, b = product_ab
        assert_allclose(partial_trace(ab, [1, 0]).matrix, np.kron(b.matrix, a.matrix), atol=1e-12)

    @pytest.mark.parametrize("keep", [[3], [0, 0], []])
    def test_bad_indices(self, bell, keep):
        with pytest.raises(ValueError):
            partial_trace(bell, keep)

    @settings(max_examples=25, deadline=None)
    @given(seeds)
    def test_composition(self, seed):
        rho = random_mixed_three_qubit(seed)
        two_step = partial_trace(partial_trace(rho, [0, 2]), [1])
        assert_allclose(two_step.matrix, partial_trace(rho, [2]).matrix, atol=1e-12)
        assert abs(np.trace(partial_trace(rho, [1]).matrix) - 1) < 1e-12


class TestHermitianEigen:
    def test_identity(self):
        w, _ = hermitian_eigen(np.eye(4))
        assert_allclose(w, [1, 1, 1, 1])

    def test_pauli_x(self):
        w, v = hermitian_eigen(PAULI_X)
        assert_allclose(w, [1, -1], atol=1e-14)
        assert_allclose(PAULI_X @ v, v * w, atol=1e-12)

    def test_w_single_qubit_spectrum(self):
        # rho_A = diag(1/3, 2/3): A is |1> in two of the three terms
        w, _ = hermitian_eigen(W.reduced([0]).matrix)
        assert_allclose(w, [2 / 3, 1 / 3], atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValueError):
            hermitian_eigen(np.array([[0, 1], [0, 0]]))

    @pytest.mark.parametrize("n", [2, 4, 8, 16])
    def test_against_lapack(self, n):
        h = random_hermitian(n, n)
        w, v = hermitian_eigen(h)
        assert_allclose(w, np.linalg.eigvalsh(h)[::-1], atol=1e-10)
        assert np.all(np.diff(w) <= 0)

    @settings(max_examples=40, deadline=None)
    @given(seeds, st.sampled_from([2, 4, 8]))
    def test_reconstruction(self, seed, n):
        h = random_hermitian(n, seed)
        w, v = hermitian_eigen(h)
        assert_allclose((v * w) @ v.conj().T, h, atol=1e-9)
        assert_allclose(v.conj().T @ v, np.eye(n), atol=1e-10)
        assert_allclose(h @ v, v * w, atol=1e-10)


class TestDensityMatrix:
    def test_rejects_bad_trace(self):
        with pytest.raises(StateError):
            DensityMatrix(np.eye(2))

    def test_rejects_non_hermitian(self):
        with pytest.raises(StateError):
            DensityMatrix(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_rejects_negative(self):
        with pytest.raises(StateError):
            DensityMatrix(np.diag([1.1, -0.1]))

    def test_clamps_small_negative(self):
        rho = DensityMatrix(np.diag([1 + 5e-9, -5e-9]))
        assert rho.eigenvalues.min() == 0.0
        assert rho.matrix[1, 1] == 0.0

    def test_not_power_of_two(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.eye(3) / 3)

    def test_immutable(self, bell):
        with pytest.raises(ValueError):
            bell.matrix[0, 0] = 1.0


class TestPsdSqrt:
    def test_maximally_mixed(self):
        assert_allclose(psd_sqrt(dm(np.eye(2) / 2)), np.eye(2) / np.sqrt(2), atol=1e-12)

    def test_projector(self):
        rho = haar_random_pure(2, 3).density_matrix()
        assert_allclose(psd_sqrt(rho), rho.matrix, atol=1e-10)

    def test_diagonal(self):
        assert_allclose(psd_sqrt(dm(np.diag([0.25, 0.75]))), np.diag([0.5, np.sqrt(3) / 2]), atol=1e-12)

    def test_rejects_negative_matrix(self):
        with pytest.raises(DomainError):
            psd_sqrt(np.diag([1.0, -0.1]))

    def test_hundred_random_states(self):
        for seed in range(100):
            rho = random_density(2 + seed % 2, seed)
            s = psd_sqrt(rho)
            assert_allclose(s @ s, rho.matrix, atol=1e-9)
            assert_allclose(s, s.conj().T, atol=1e-12)
            assert np.linalg.eigvalsh(s).min() > -1e-12
