"""Entropies, classical correlations and quantum discord of two-qubit states.

Measurements are rank-1 projective measurements on a single qubit, given by
the Bloch angles of their first outcome:
``|0'> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``.
All entropies are in bits.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import _kernels
from .linalg import NUMERICAL_ZERO, DensityMatrix, partial_trace

GRID_POINTS = 64
SIMPLEX_DIAMETER = 1e-7
PROB_FLOOR = 1e-12
DISCORD_CLAMP = 1e-9
TIE_TOL = 1e-14

_THETAS = np.linspace(0.0, np.pi, GRID_POINTS)
_PHIS = np.arange(GRID_POINTS) * (2.0 * np.pi / GRID_POINTS)


@dataclass(frozen=True)
class MeasurementAngles:
    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError(f"theta={self.theta} outside [0, pi]")
        if not 0.0 <= self.phi < 2.0 * np.pi:
            raise ValueError(f"phi={self.phi} outside [0, 2pi)")

    @classmethod
    def canonical(cls, theta: float, phi: float) -> "MeasurementAngles":
        """Fold arbitrary real angles onto the same measurement direction."""
        n = np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])
        t = float(np.arccos(np.clip(n[2], -1.0, 1.0)))
        p = float(np.arctan2(n[1], n[0]) % (2.0 * np.pi))
        if p >= 2.0 * np.pi:
            p = 0.0
        return cls(t, p)

    def basis(self) -> np.ndarray:
        """Columns are the two measurement basis vectors."""
        c, s = np.cos(self.theta / 2), np.sin(self.theta / 2)
        e = np.exp(1j * self.phi)
        return np.array([[c, -np.conj(e) * s], [e * s, c]])


@dataclass(frozen=True)
class DiscordResult:
    discord: float
    classical: float
    mutual_info: float
    optimal_angles: MeasurementAngles
    measured_side: str = "B"


def entropy_of_spectrum(w) -> float:
    w = np.asarray(w, dtype=float)
    # drop rounding-level eigenvalues so a pure spectrum gives exactly 0
    w = w[w > NUMERICAL_ZERO]
    w = w / w.sum()
    return max(float(-np.sum(w * np.log2(w))), 0.0)


def von_neumann_entropy(rho: DensityMatrix) -> float:
    return entropy_of_spectrum(rho.eigenvalues)


def _two_qubit(rho: DensityMatrix) -> None:
    if rho.num_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.num_qubits} qubits")


def _split_qubits(rho: DensityMatrix, split) -> tuple[list[int], list[int]]:
    if split is None:
        if rho.num_qubits < 2:
            raise ValueError("mutual information needs at least two qubits")
        return [0], list(range(1, rho.num_qubits))
    a, b = [int(q) for q in split[0]], [int(q) for q in split[1]]
    if sorted(a + b) != list(range(rho.num_qubits)) or not a or not b:
        raise ValueError(f"split {split} must partition qubits 0..{rho.num_qubits - 1}")
    return a, b


def mutual_information(rho: DensityMatrix, split=None) -> float:
    """``S(A) + S(B) - S(AB)`` for the bipartition ``split = (A qubits, B qubits)``.

    The default split puts qubit 0 against the rest.
    """
    a, b = _split_qubits(rho, split)
    return (
        von_neumann_entropy(partial_trace(rho, a))
        + von_neumann_entropy(partial_trace(rho, b))
        - von_neumann_entropy(rho)
    )


def _oriented(rho: DensityMatrix, measured_side: str) -> DensityMatrix:
    _two_qubit(rho)
    if measured_side == "B":
        return rho
    if measured_side == "A":
        return partial_trace(rho, [1, 0])
    raise ValueError(f"measured_side must be 'A' or 'B', got {measured_side!r}")


def measured_conditional_entropy(rho: DensityMatrix, angles: MeasurementAngles) -> float:
    """Average entropy of qubit A after measuring qubit B along ``angles``."""
    _two_qubit(rho)
    out = _kernels.conditional_entropy_grid(
        np.ascontiguousarray(rho.matrix), np.array([angles.theta]), np.array([angles.phi]), PROB_FLOOR
    )
    return float(out[0, 0])


def minimize_conditional_entropy(rho: DensityMatrix) -> tuple[float, MeasurementAngles]:
    """Smallest measured conditional entropy over projective measurements on B.

    A 64x64 grid over (theta, phi) seeds a Nelder-Mead refinement that stops
    once the simplex diameter is below 1e-7. Grid ties go to the
    lexicographically smallest (theta, phi).
    """
    _two_qubit(rho)
    m = np.ascontiguousarray(rho.matrix)
    grid = _kernels.conditional_entropy_grid(m, _THETAS, _PHIS, PROB_FLOOR)
    # values within rounding of the minimum count as ties
    first = int(np.argmax(grid.ravel() <= grid.min() + TIE_TOL))
    i, j = np.unravel_index(first, grid.shape)
    best = (float(grid[i, j]), float(_THETAS[i]), float(_PHIS[j]))

    def f(x):
        return _kernels.conditional_entropy_grid(m, x[:1], x[1:], PROB_FLOOR)[0, 0]

    dt, dp = _THETAS[1] - _THETAS[0], _PHIS[1] - _PHIS[0]
    x0 = np.array([best[1], best[2]])
    simplex = np.array([x0, x0 + [dt, 0.0], x0 + [0.0, dp]])
    # scipy tests max |x_i - x_best| per coordinate; 2*sqrt(2)*xatol bounds the diameter
    res = minimize(
        f,
        x0,
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": SIMPLEX_DIAMETER / (2.0 * np.sqrt(2.0)),
            "fatol": np.inf,
            "maxiter": 5000,
        },
    )
    # rounding-level gains on a flat landscape must not move the grid choice
    if res.fun < best[0] - TIE_TOL:
        best = (float(res.fun), float(res.x[0]), float(res.x[1]))
    return best[0], MeasurementAngles.canonical(best[1], best[2])


def classical_correlations(rho: DensityMatrix, measured_side: str = "B") -> tuple[float, MeasurementAngles]:
    """Classical correlations J with the measurement on ``measured_side``.

    Returns the value in bits and the optimal measurement angles.
    """
    r = _oriented(rho, measured_side)
    s_unmeasured = von_neumann_entropy(partial_trace(r, [0]))
    cond, angles = minimize_conditional_entropy(r)
    return max(s_unmeasured - cond, 0.0), angles


def quantum_discord(rho: DensityMatrix, measured_side: str = "B") -> DiscordResult:
    mi = mutual_information(rho)
    j, angles = classical_correlations(rho, measured_side)
    d = mi - j
    if -DISCORD_CLAMP <= d < 0.0:
        d = 0.0
        j = mi
    return DiscordResult(d, j, mi, angles, measured_side)
