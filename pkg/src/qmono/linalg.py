"""Dense complex linear algebra for few-qubit states.

Qubit ordering is big-endian throughout: qubit 0 is the most significant bit
of a basis index, so ``|q0 q1 q2>`` sits at index ``4*q0 + 2*q1 + q2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import _kernels

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
CLAMP_TOL = 1e-8
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
NUMERICAL_ZERO = 1e-14


class StateError(ValueError):
    """A matrix or vector fails the invariants of a quantum state."""


class DomainError(ValueError):
    """Input is a valid state but outside the domain of the operation."""


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def is_hermitian(h, tol: float = HERMITIAN_TOL) -> bool:
    h = as_matrix(h)
    return bool(np.max(np.abs(h - h.conj().T), initial=0.0) <= tol)


def hermitian_eigen(h, tol: float = JACOBI_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues in descending order and the matching orthonormal
    eigenvectors as columns. The off-diagonal threshold ``tol`` is scaled by
    the Frobenius norm for matrices with norm above one.
    """
    h = as_matrix(h)
    if not is_hermitian(h):
        raise ValueError("matrix is not Hermitian within 1e-10")
    h = 0.5 * (h + h.conj().T)
    scale = max(1.0, float(np.linalg.norm(h)))
    w, v, sweeps = _kernels.jacobi_hermitian(h, tol * scale, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise ArithmeticError("Jacobi iteration did not converge")
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _num_qubits(dim: int) -> int:
    n = int(dim).bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    return n


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on qubits.

    Eigenvalues in ``[-1e-8, 0)`` are clamped to zero on construction (the
    matrix is rebuilt from the clamped spectrum); anything more negative is
    rejected with :class:`StateError`.
    """

    matrix: np.ndarray
    num_qubits: int = field(default=-1)
    eigenvalues: np.ndarray = field(init=False, repr=False)
    eigenvectors: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise StateError(f"density matrix must be square, got shape {m.shape}")
        n = _num_qubits(m.shape[0])
        if self.num_qubits not in (-1, n):
            raise StateError(f"num_qubits={self.num_qubits} does not match dimension {m.shape[0]}")
        if not is_hermitian(m):
            raise StateError("density matrix is not Hermitian within 1e-10")
        if abs(np.trace(m) - 1.0) > TRACE_TOL:
            raise StateError(f"trace {np.trace(m).real:.12g} differs from 1")
        m = 0.5 * (m + m.conj().T)
        w, v = hermitian_eigen(m)
        if w[-1] < -CLAMP_TOL:
            raise StateError(f"eigenvalue {w[-1]:.3e} is below -1e-8")
        if w[-1] < 0.0:
            w = np.where(w < 0.0, 0.0, w)
            m = (v * w) @ v.conj().T
        m.setflags(write=False)
        w.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "num_qubits", n)
        object.__setattr__(self, "eigenvalues", w)
        object.__setattr__(self, "eigenvectors", v)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def rank(self) -> int:
        return int(np.sum(self.eigenvalues > CLAMP_TOL))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def partial_trace(rho: DensityMatrix, keep: Sequence[int]) -> DensityMatrix:
    """Reduce ``rho`` to the qubits in ``keep``, in the order given."""
    n = rho.num_qubits
    keep = [int(k) for k in keep]
    if not keep:
        raise ValueError("keep must name at least one qubit")
    if len(set(keep)) != len(keep):
        raise ValueError(f"repeated qubit index in {keep}")
    bad = [k for k in keep if not 0 <= k < n]
    if bad:
        raise ValueError(f"qubit index {bad[0]} out of range for {n} qubits")
    traced = [q for q in range(n) if q not in keep]
    t = rho.matrix.reshape((2,) * (2 * n))
    perm = keep + traced
    t = t.transpose(perm + [n + q for q in perm])
    dk, dt = 1 << len(keep), 1 << len(traced)
    t = t.reshape(dk, dt, dk, dt)
    return DensityMatrix(np.einsum("ajbj->ab", t))


def psd_sqrt(rho) -> np.ndarray:
    """Positive square root via the spectral decomposition."""
    if isinstance(rho, DensityMatrix):
        w, v = rho.eigenvalues, rho.eigenvectors
    else:
        w, v = hermitian_eigen(rho)
    if w[-1] < -CLAMP_TOL:
        raise DomainError(f"matrix has eigenvalue {w[-1]:.3e} below -1e-8")
    # sqrt would amplify rounding noise in a zero eigenvalue to ~1e-8
    s = np.sqrt(np.where(w > NUMERICAL_ZERO, w, 0.0))
    out = (v * s) @ v.conj().T
    return 0.5 * (out + out.conj().T)


PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
IDENTITY2 = np.eye(2, dtype=np.complex128)
