"""Concurrence, entanglement of formation and the three-tangle."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import NUMERICAL_ZERO, PAULI_Y, DensityMatrix, hermitian_eigen, psd_sqrt
from .states import PureState

YY = np.kron(PAULI_Y, PAULI_Y)
TANGLE_CLAMP = 1e-9


@dataclass(frozen=True)
class EntanglementValues:
    concurrence: float
    concurrence_sq: float
    eof: float


def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"binary entropy argument {x} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def eof_from_concurrence_sq(c2: float) -> float:
    """Entanglement of formation (bits) as a function of the squared concurrence."""
    c2 = min(max(float(c2), 0.0), 1.0)
    return binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c2)))


def _two_qubit(rho: DensityMatrix) -> None:
    if rho.num_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.num_qubits} qubits")


def spin_flip(rho: DensityMatrix) -> np.ndarray:
    """``(sigma_y x sigma_y) rho* (sigma_y x sigma_y)`` in the computational basis."""
    _two_qubit(rho)
    return YY @ rho.matrix.conj() @ YY


def _c2_from_factor(f: np.ndarray) -> float:
    # rho = f f^dagger with at most two columns; sqrt of the spectrum of
    # rho * spin_flip(rho) are the singular values of f^T YY f, and for a 2x2
    # matrix (s1 - s2)^2 = |tau|_F^2 - 2 |det tau| needs no square roots
    tau = f.T @ YY @ f
    if tau.shape == (1, 1):
        c2 = abs(tau[0, 0]) ** 2
    else:
        c2 = float(np.sum(np.abs(tau) ** 2)) - 2.0 * abs(np.linalg.det(tau))
    return min(max(c2, 0.0), 1.0)


def _concurrence_hermitian(rho: DensityMatrix) -> float:
    s = psd_sqrt(rho)
    mu = hermitian_eigen(s @ spin_flip(rho) @ s)[0]
    r = np.sqrt(np.clip(mu, 0.0, None))
    return max(0.0, float(r[0] - r[1] - r[2] - r[3]))


def concurrence_squared(rho: DensityMatrix) -> float:
    """Squared concurrence; exact in closed form when rank(rho) <= 2."""
    _two_qubit(rho)
    w, v = rho.eigenvalues, rho.eigenvectors
    k = int(np.sum(w > NUMERICAL_ZERO))
    if k <= 2:
        return _c2_from_factor(v[:, :k] * np.sqrt(w[:k]))
    return _concurrence_hermitian(rho) ** 2


def concurrence(rho: DensityMatrix) -> float:
    """Wootters concurrence ``max(0, r1 - r2 - r3 - r4)``.

    ``r_i`` are square roots of the descending eigenvalues of
    ``sqrt(rho) spin_flip(rho) sqrt(rho)``. Rank <= 2 states use the
    equivalent closed form from :func:`concurrence_squared`.
    """
    _two_qubit(rho)
    if int(np.sum(rho.eigenvalues > NUMERICAL_ZERO)) <= 2:
        return float(np.sqrt(concurrence_squared(rho)))
    return _concurrence_hermitian(rho)


def eof(rho: DensityMatrix) -> float:
    return eof_from_concurrence_sq(concurrence_squared(rho))


def entanglement_values(rho: DensityMatrix) -> EntanglementValues:
    c2 = concurrence_squared(rho)
    return EntanglementValues(float(np.sqrt(c2)), c2, eof_from_concurrence_sq(c2))


# --- pure three-qubit states -----------------------------------------------

def _check_pure3(psi: PureState) -> None:
    if psi.num_qubits != 3:
        raise ValueError(f"expected a three-qubit pure state, got {psi.num_qubits} qubits")


def _others(focus: int) -> tuple[int, int]:
    if focus not in (0, 1, 2):
        raise ValueError(f"qubit index {focus} out of range for 3 qubits")
    j, k = [q for q in range(3) if q != focus]
    return j, k


def pair_factor(psi: PureState, i: int, j: int) -> np.ndarray:
    """4x2 matrix ``f`` with ``f f^dagger`` the reduction of ``psi`` to qubits (i, j)."""
    _check_pure3(psi)
    if len({i, j}) != 2 or not {i, j} <= {0, 1, 2}:
        raise ValueError(f"need two distinct qubit indices in 0..2, got ({i}, {j})")
    (l,) = {0, 1, 2} - {i, j}
    return psi.amplitudes.reshape(2, 2, 2).transpose(i, j, l).reshape(4, 2)


def pair_concurrence_sq(psi: PureState, i: int, j: int) -> float:
    """Squared concurrence of the two-qubit reduction (i, j), straight from amplitudes."""
    return _c2_from_factor(pair_factor(psi, i, j))


def pair_eof(psi: PureState, i: int, j: int) -> float:
    return eof_from_concurrence_sq(pair_concurrence_sq(psi, i, j))


def concurrence_sq_pure_bipartition(psi: PureState, focus: int) -> float:
    """``C^2`` between qubit ``focus`` and the other two: ``4 det(rho_focus)``."""
    _check_pure3(psi)
    j, k = _others(focus)
    m = psi.amplitudes.reshape(2, 2, 2).transpose(focus, j, k).reshape(2, 4)
    r = m @ m.conj().T
    return min(max(float(4.0 * (r[0, 0] * r[1, 1] - abs(r[0, 1]) ** 2).real), 0.0), 1.0)


def three_tangle(psi: PureState, focus: int = 0) -> float:
    j, k = _others(focus)
    tau = (
        concurrence_sq_pure_bipartition(psi, focus)
        - pair_concurrence_sq(psi, focus, j)
        - pair_concurrence_sq(psi, focus, k)
    )
    if -TANGLE_CLAMP <= tau < 0.0:
        tau = 0.0
    return tau
