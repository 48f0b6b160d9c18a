"""Pure and mixed state constructors, random sampling, purification and I/O."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import DensityMatrix, DomainError, StateError, partial_trace

NORM_TOL = 1e-10
RANK2_TOL = 1e-8


class StateFormatError(ValueError):
    """A state file is not valid JSON or does not follow the state schema."""


@dataclass(frozen=True, eq=False)
class PureState:
    amplitudes: np.ndarray
    num_qubits: int = -1

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.complex128).ravel()
        n = a.size.bit_length() - 1
        if a.size < 2 or (1 << n) != a.size:
            raise StateError(f"amplitude vector length {a.size} is not 2**n with n >= 1")
        if self.num_qubits not in (-1, n):
            raise StateError(f"num_qubits={self.num_qubits} does not match {a.size} amplitudes")
        norm2 = float(np.vdot(a, a).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise StateError(f"squared norm {norm2:.12g} differs from 1")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "num_qubits", n)

    def density_matrix(self) -> DensityMatrix:
        a = self.amplitudes
        return DensityMatrix(np.outer(a, a.conj()))

    def reduced(self, keep) -> DensityMatrix:
        return partial_trace(self.density_matrix(), keep)

    def fidelity(self, other: "PureState") -> float:
        return float(abs(np.vdot(self.amplitudes, other.amplitudes)) ** 2)


def _basis_index(bits: str) -> int:
    return int(bits, 2)


@dataclass(frozen=True)
class GhzClassParams:
    """Coefficients of the five-term three-qubit canonical form."""

    lambda0: float
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float
    theta: float = 0.0

    def __post_init__(self):
        lam = self.lambdas
        if np.any(lam < 0):
            raise ValueError(f"coefficients must be non-negative, got {lam.tolist()}")
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if abs(float(np.sum(lam ** 2)) - 1.0) > NORM_TOL:
            raise ValueError(f"sum of squared coefficients is {np.sum(lam ** 2):.12g}, not 1")

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([self.lambda0, self.lambda1, self.lambda2, self.lambda3, self.lambda4])


@dataclass(frozen=True)
class PsiTildeParams:
    p: float
    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon={self.epsilon} outside [0, 1]")


def ghz_class_state(params: GhzClassParams) -> PureState:
    l0, l1, l2, l3, l4 = params.lambdas
    a = np.zeros(8, dtype=np.complex128)
    a[_basis_index("000")] = l0
    a[_basis_index("100")] = l1 * np.exp(1j * params.theta)
    a[_basis_index("101")] = l2
    a[_basis_index("110")] = l3
    a[_basis_index("111")] = l4
    return PureState(a)


def w_class_state(lambda0, lambda1, lambda2, lambda3, theta=0.0) -> PureState:
    return ghz_class_state(GhzClassParams(lambda0, lambda1, lambda2, lambda3, 0.0, theta))


def psi_tilde(params: PsiTildeParams) -> PureState:
    p, eps = params.p, params.epsilon
    a = np.zeros(8, dtype=np.complex128)
    a[_basis_index("000")] = np.sqrt(p * eps)
    a[_basis_index("111")] = np.sqrt(p * (1.0 - eps))
    a[_basis_index("101")] = a[_basis_index("110")] = np.sqrt((1.0 - p) / 2.0)
    return PureState(a)


GHZ = ghz_class_state(GhzClassParams(1 / np.sqrt(2), 0, 0, 0, 1 / np.sqrt(2)))
W = w_class_state(1 / np.sqrt(3), 0, 1 / np.sqrt(3), 1 / np.sqrt(3))


def bell_phi_plus() -> PureState:
    return PureState(np.array([1, 0, 0, 1]) / np.sqrt(2))


# --- random sampling -------------------------------------------------------

def haar_random_pure(num_qubits: int, seed) -> PureState:
    """Haar-distributed pure state from a normalized complex Gaussian vector.

    ``seed`` is anything :func:`numpy.random.default_rng` accepts, including
    a ``SeedSequence`` or an existing ``Generator``.
    """
    if num_qubits not in (1, 2, 3, 4):
        raise ValueError(f"num_qubits must be 1..4, got {num_qubits}")
    rng = np.random.default_rng(seed)
    d = 1 << num_qubits
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return PureState(z / np.linalg.norm(z))


def haar_unitary(dim: int, seed) -> np.ndarray:
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_rank2_two_qubit(seed) -> DensityMatrix:
    return haar_random_pure(3, seed).reduced([0, 1])


def random_mixed_three_qubit(seed) -> DensityMatrix:
    """Random mixture ``w |a><a| + (1-w) |b><b|`` of two Haar pure states."""
    rng = np.random.default_rng(seed)
    a = haar_random_pure(3, rng).amplitudes
    b = haar_random_pure(3, rng).amplitudes
    w = rng.uniform()
    m = w * np.outer(a, a.conj()) + (1.0 - w) * np.outer(b, b.conj())
    return DensityMatrix(m)


def _orthant_point(rng, k: int) -> np.ndarray:
    x = np.abs(rng.standard_normal(k))
    return x / np.linalg.norm(x)


def random_ghz_class_params(seed) -> GhzClassParams:
    """Coefficients uniform on the positive orthant of the 4-sphere, theta uniform."""
    rng = np.random.default_rng(seed)
    lam = _orthant_point(rng, 5)
    return GhzClassParams(*lam, theta=float(rng.uniform(0.0, np.pi)))


def random_w_class_params(seed) -> GhzClassParams:
    rng = np.random.default_rng(seed)
    lam = _orthant_point(rng, 4)
    return GhzClassParams(*lam, 0.0, theta=float(rng.uniform(0.0, np.pi)))


def spawn_seeds(master_seed: int, count: int) -> list[np.random.SeedSequence]:
    """Independent per-sample seeds derived from one master seed."""
    return np.random.SeedSequence(master_seed).spawn(count)


# --- purification ----------------------------------------------------------

def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = np.flatnonzero(np.abs(v) > 1e-12)
    if idx.size == 0:
        return v
    c = v[idx[0]]
    return v * (abs(c) / c)


def purify_rank2(rho: DensityMatrix) -> PureState:
    """Purify a two-qubit state of rank at most 2 with one ancilla qubit.

    The ancilla is the last (least significant) qubit; eigenvectors are taken
    in descending eigenvalue order with their first nonzero component made
    real and positive.
    """
    if rho.num_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.num_qubits} qubits")
    w, v = rho.eigenvalues, rho.eigenvectors
    if w[2] > RANK2_TOL:
        raise DomainError(f"state has rank > 2 (third eigenvalue {w[2]:.3e})")
    p = np.clip(w[:2], 0.0, None)
    p = p / p.sum()
    u1, u2 = _fix_phase(v[:, 0]), _fix_phase(v[:, 1])
    phi = np.empty(8, dtype=np.complex128)
    phi[0::2] = np.sqrt(p[0]) * u1
    phi[1::2] = np.sqrt(p[1]) * u2
    return PureState(phi / np.linalg.norm(phi))


# --- JSON state files ------------------------------------------------------

def state_to_json(state) -> dict:
    if isinstance(state, PureState):
        return {
            "num_qubits": state.num_qubits,
            "amplitudes": [[float(z.real), float(z.imag)] for z in state.amplitudes],
        }
    if isinstance(state, DensityMatrix):
        return {
            "num_qubits": state.num_qubits,
            "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in state.matrix],
        }
    raise TypeError(f"cannot serialize {type(state).__name__}")


def _complex_array(data, ndim: int) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFormatError(f"entries must be [re, im] number pairs: {exc}") from None
    if arr.ndim != ndim + 1 or arr.shape[-1] != 2:
        raise StateFormatError(f"expected {ndim}-d array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_from_json(obj):
    """Build a PureState or DensityMatrix from its JSON object form.

    Structural problems raise :class:`StateFormatError`; a well-formed object
    whose numbers violate state invariants raises :class:`StateError`.
    """
    if not isinstance(obj, dict) or "num_qubits" not in obj:
        raise StateFormatError("state must be an object with a 'num_qubits' field")
    n = obj["num_qubits"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise StateFormatError(f"num_qubits must be a positive integer, got {n!r}")
    if ("amplitudes" in obj) == ("matrix" in obj):
        raise StateFormatError("state must have exactly one of 'amplitudes' or 'matrix'")
    if "amplitudes" in obj:
        a = _complex_array(obj["amplitudes"], 1)
        if a.size != 1 << n:
            raise StateFormatError(f"{a.size} amplitudes given for {n} qubits")
        return PureState(a, n)
    m = _complex_array(obj["matrix"], 2)
    if m.shape != (1 << n, 1 << n):
        raise StateFormatError(f"matrix shape {m.shape} does not match {n} qubits")
    return DensityMatrix(m, n)


def load_state(path):
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise StateFormatError(f"{path}: invalid JSON ({exc})") from None
    return state_from_json(obj)


def save_state(state, path) -> None:
    Path(path).write_text(json.dumps(state_to_json(state), indent=2) + "\n")
