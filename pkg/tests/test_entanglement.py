import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from numpy.testing import assert_allclose

from qmono.entanglement import (
    YY,
    binary_entropy,
    concurrence,
    concurrence_sq_pure_bipartition,
    concurrence_squared,
    entanglement_values,
    eof,
    eof_from_concurrence_sq,
    pair_concurrence_sq,
    spin_flip,
    three_tangle,
)
from qmono.linalg import DensityMatrix, partial_trace
from qmono.states import (
    GHZ,
    W,
    GhzClassParams,
    ghz_class_state,
    haar_random_pure,
    random_mixed_three_qubit,
    random_w_class_params,
    spawn_seeds,
)

from conftest import dm

# mpmath, 30 digits
H_0872678 = 0.5500477491690313  # binary entropy at 0.872678
W_PAIR_EOF = 0.5500477595827574  # h((1 + sqrt(5)/3) / 2), concurrence 2/3


def wootters_nonhermitian(m):
    """Textbook route: square roots of the eigenvalues of rho * rho_tilde."""
    lam = np.linalg.eigvals(m @ YY @ m.conj() @ YY)
    r = np.sort(np.sqrt(np.abs(lam.real)))[::-1]
    return max(0.0, r[0] - r[1] - r[2] - r[3])


class TestBinaryEntropy:
    @pytest.mark.parametrize("x", [0.0, 1.0])
    def test_endpoints(self, x):
        assert binary_entropy(x) == 0.0

    def test_half(self):
        assert binary_entropy(0.5) == pytest.approx(1.0, abs=1e-15)

    def test_w_value(self):
        assert binary_entropy(0.872678) == pytest.approx(H_0872678, abs=1e-12)

    @pytest.mark.parametrize("x", [-0.01, 1.01])
    def test_range(self, x):
        with pytest.raises(ValueError):
            binary_entropy(x)


class TestSpinFlip:
    def test_00_to_11(self):
        rho = dm(np.diag([1, 0, 0, 0]))
        assert_allclose(spin_flip(rho), np.diag([0, 0, 0, 1]), atol=1e-15)

    def test_bell_invariant(self, bell):
        assert_allclose(spin_flip(bell), bell.matrix, atol=1e-15)

    def test_maximally_mixed(self):
        assert_allclose(spin_flip(dm(np.eye(4) / 4)), np.eye(4) / 4, atol=1e-15)

    def test_dimension(self):
        with pytest.raises(ValueError):
            spin_flip(dm(np.eye(2) / 2))


class TestConcurrence:
    def test_bell(self, bell):
        assert concurrence(bell) == pytest.approx(1, abs=1e-12)
        assert eof(bell) == pytest.approx(1, abs=1e-12)

    def test_product(self):
        a = haar_random_pure(1, 1).amplitudes
        b = haar_random_pure(1, 2).amplitudes
        rho = DensityMatrix(np.outer(np.kron(a, b), np.kron(a, b).conj()))
        assert concurrence(rho) == pytest.approx(0, abs=1e-7)
        assert eof(rho) == pytest.approx(0, abs=1e-12)

    def test_w_pair(self):
        rho = W.reduced([0, 1])
        assert concurrence(rho) == pytest.approx(2 / 3, abs=1e-12)
        assert wootters_nonhermitian(rho.matrix) == pytest.approx(2 / 3, abs=1e-7)
        assert eof(rho) == pytest.approx(W_PAIR_EOF, abs=1e-12)

    def test_w_pair_matches_standard_w(self):
        # X on qubit A maps the canonical W to (|001>+|010>+|100>)/sqrt3
        std = np.zeros(8)
        std[[1, 2, 4]] = 1 / np.sqrt(3)
        rho = DensityMatrix(np.outer(std, std)).matrix
        red = np.einsum("abcdec->abde", rho.reshape(2, 2, 2, 2, 2, 2)).reshape(4, 4)
        assert wootters_nonhermitian(red) == pytest.approx(2 / 3, abs=1e-7)

    def test_separable_mixture(self):
        assert concurrence(dm(np.eye(4) / 4)) == 0.0

    @pytest.mark.parametrize("seed", range(15))
    def test_against_textbook_route(self, seed):
        rho3 = random_mixed_three_qubit(seed)
        for keep in ([0, 1], [1, 2]):
            rho = partial_trace(rho3, keep)
            assert concurrence(rho) == pytest.approx(wootters_nonhermitian(rho.matrix), abs=1e-7)
        full = DensityMatrix(0.9 * partial_trace(rho3, [0, 1]).matrix + 0.1 * np.eye(4) / 4)
        assert concurrence(full) == pytest.approx(wootters_nonhermitian(full.matrix), abs=1e-9)

    def test_closed_form_matches_hermitian_route(self):
        from qmono.entanglement import _concurrence_hermitian

        for seed in range(10):
            rho = haar_random_pure(3, seed).reduced([0, 2])
            assert concurrence(rho) == pytest.approx(_concurrence_hermitian(rho), abs=1e-7)

    def test_values_consistent(self):
        for seed in range(10):
            v = entanglement_values(haar_random_pure(3, seed).reduced([0, 1]))
            assert v.eof == pytest.approx(binary_entropy((1 + np.sqrt(1 - v.concurrence**2)) / 2), abs=1e-10)
            assert v.concurrence_sq == pytest.approx(v.concurrence**2, abs=1e-12)


class TestPureThreeQubit:
    def test_product(self):
        psi = ghz_class_state(GhzClassParams(1, 0, 0, 0, 0))
        assert concurrence_sq_pure_bipartition(psi, 0) == 0.0
        assert three_tangle(psi) == 0.0

    def test_ghz(self):
        assert concurrence_sq_pure_bipartition(GHZ, 0) == pytest.approx(1, abs=1e-14)
        assert three_tangle(GHZ) == pytest.approx(1, abs=1e-12)

    def test_w(self):
        assert concurrence_sq_pure_bipartition(W, 0) == pytest.approx(8 / 9, abs=1e-14)
        assert three_tangle(W) <= 1e-12

    def test_pair_matches_density_route(self):
        for seed in range(10):
            psi = haar_random_pure(3, seed)
            for i, j in ((0, 1), (0, 2), (1, 2)):
                assert pair_concurrence_sq(psi, i, j) == pytest.approx(concurrence_squared(psi.reduced([i, j])), abs=1e-12)

    def test_w_class_tangle_vanishes(self):
        for seed in spawn_seeds(3, 200):
            psi = ghz_class_state(random_w_class_params(seed))
            assert max(three_tangle(psi, f) for f in range(3)) <= 1e-9

    def test_ckw(self):
        for seed in spawn_seeds(4, 500):
            psi = haar_random_pure(3, seed)
            assert pair_concurrence_sq(psi, 0, 1) + pair_concurrence_sq(psi, 0, 2) <= concurrence_sq_pure_bipartition(psi, 0) + 1e-9

    @settings(max_examples=100, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_tangle_focus_invariant(self, seed):
        psi = haar_random_pure(3, seed)
        t = [three_tangle(psi, f) for f in range(3)]
        assert max(t) - min(t) <= 1e-8


class TestEofFunction:
    def test_monotone(self):
        c = np.linspace(0, 1, 1000)
        e = np.array([eof_from_concurrence_sq(x * x) for x in c])
        assert np.all(np.diff(e) >= -1e-15)

    def test_concave_in_concurrence_squared(self):
        rng = np.random.default_rng(5)
        for _ in range(2000):
            a, b = rng.uniform(0, 1, 2)
            if a + b > 1:
                a, b = 1 - a, 1 - b
            lhs = eof_from_concurrence_sq(a) + eof_from_concurrence_sq(b)
            assert lhs >= eof_from_concurrence_sq(a + b) - 1e-12
