"""Monogamy checks for discord, entanglement of formation and mutual information.

Sign convention: a deficit is ``Q(A|BC) - Q(A|B) - Q(A|C)`` and is positive
when the state is monogamous; ``violation`` is its negative.

Pure three-qubit discords here come from the Koashi-Winter closed form
``D(i,k) = S(k) - S(l) + E(i,l)`` (measurement on k, l the third qubit);
anything labelled "optimized" runs the projective-measurement search.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .correlations import (
    mutual_information,
    quantum_discord,
    von_neumann_entropy,
)
from .entanglement import eof, pair_eof
from .linalg import DensityMatrix, DomainError, partial_trace
from .states import RANK2_TOL, PureState

CLOSED_FORM_TOL = 1e-9
OPTIMIZER_TOL = 2e-5
BISEPARABLE_TOL = 1e-8
CHAIN_SKIP = 1e-6
CHAIN_MARGIN = -1e-8


def _pure3(psi: PureState) -> None:
    if not isinstance(psi, PureState) or psi.num_qubits != 3:
        raise ValueError("expected a three-qubit PureState")


def _distinct(*idx: int) -> None:
    if sorted(idx) != [0, 1, 2]:
        raise ValueError(f"qubit indices {idx} must be a permutation of (0, 1, 2)")


def _rest(focus: int) -> tuple[int, int]:
    if focus not in (0, 1, 2):
        raise ValueError(f"focus qubit {focus} out of range for 3 qubits")
    j, k = [q for q in range(3) if q != focus]
    return j, k


def single_entropies(psi: PureState) -> np.ndarray:
    rho = psi.density_matrix()
    return np.array([von_neumann_entropy(partial_trace(rho, [q])) for q in range(3)])


def discord_via_kw(psi: PureState, i: int, k: int, l: int) -> float:
    """Discord of pair (i, k) with qubit k measured, without any optimization."""
    _pure3(psi)
    _distinct(i, k, l)
    s = single_entropies(psi)
    return float(s[k] - s[l] + pair_eof(psi, i, l))


@dataclass(frozen=True)
class KWResidual:
    conditional_gap: float  # |min S(i|k) - E(i,l)|
    discord_gap: float  # |optimized D(i,k) - closed-form D(i,k)|

    @property
    def max(self) -> float:
        return max(self.conditional_gap, self.discord_gap)


def kw_residual(psi: PureState, i: int, k: int, l: int) -> KWResidual:
    _pure3(psi)
    _distinct(i, k, l)
    rho_ik = psi.reduced([i, k])
    res = quantum_discord(rho_ik, "B")
    cond = von_neumann_entropy(partial_trace(rho_ik, [0])) - res.classical
    e_il = pair_eof(psi, i, l)
    return KWResidual(abs(cond - e_il), abs(res.discord - discord_via_kw(psi, i, k, l)))


def kw_residual_all(psi: PureState) -> float:
    """Largest Koashi-Winter residual over the six ordered qubit triples."""
    return max(kw_residual(psi, *t).max for t in permutations(range(3)))


def discord_monogamy_deficit(psi: PureState, focus: int = 0) -> float:
    _pure3(psi)
    j, k = _rest(focus)
    s = single_entropies(psi)
    return float(s[focus] - discord_via_kw(psi, focus, j, k) - discord_via_kw(psi, focus, k, j))


def eof_monogamy_deficit(psi: PureState, focus: int = 0) -> float:
    _pure3(psi)
    j, k = _rest(focus)
    s = single_entropies(psi)
    return float(s[focus] - pair_eof(psi, focus, j) - pair_eof(psi, focus, k))


def classical_monogamy_residual(psi: PureState, focus: int = 0) -> float:
    """``|D-deficit + J-deficit|`` from optimized two-qubit discords.

    For pure states ``D(A|BC) = J(A|BC) = S(A)``, and the mutual information
    splits additively, so the two deficits cancel.
    """
    _pure3(psi)
    j, k = _rest(focus)
    s_focus = single_entropies(psi)[focus]
    d_sum = j_sum = 0.0
    for other in (j, k):
        r = quantum_discord(psi.reduced([focus, other]), "B")
        d_sum += r.discord
        j_sum += r.classical
    return abs((s_focus - d_sum) + (s_focus - j_sum))


def _subset_entropy(rho: DensityMatrix, qubits: Sequence[int]) -> float:
    if len(qubits) == rho.num_qubits:
        return von_neumann_entropy(rho)
    return von_neumann_entropy(partial_trace(rho, sorted(qubits)))


def interaction_information(rho, partition: Sequence[Sequence[int]] | None = None) -> float:
    """Inclusion-exclusion sum ``sum_J (-1)^(|J| + n + 1) S(rho_J)`` over parties.

    ``partition`` lists the qubit groups forming the ``n >= 2`` parties; by
    default each qubit is its own party.
    """
    if isinstance(rho, PureState):
        rho = rho.density_matrix()
    if partition is None:
        partition = [[q] for q in range(rho.num_qubits)]
    groups = [[int(q) for q in g] for g in partition]
    flat = [q for g in groups for q in g]
    if len(groups) < 2 or any(not g for g in groups):
        raise ValueError("partition needs at least two nonempty groups")
    if len(set(flat)) != len(flat):
        raise ValueError(f"partition groups overlap: {groups}")
    if sorted(flat) != list(range(rho.num_qubits)):
        raise ValueError(f"partition {groups} does not cover qubits 0..{rho.num_qubits - 1}")
    n = len(groups)
    total = 0.0
    for r in range(1, n + 1):
        sign = (-1) ** (r + n + 1)
        for subset in combinations(groups, r):
            total += sign * _subset_entropy(rho, [q for g in subset for q in g])
    return total


def mutual_info_decomposition_residual(rho) -> float:
    """``|I(A:BC) - I(A:B) - I(A:C) - I_ABC|``; vanishes identically."""
    if isinstance(rho, PureState):
        rho = rho.density_matrix()
    if rho.num_qubits != 3:
        raise ValueError("expected a three-qubit state")
    i_a_bc = mutual_information(rho, ([0], [1, 2]))
    i_ab = mutual_information(partial_trace(rho, [0, 1]))
    i_ac = mutual_information(partial_trace(rho, [0, 2]))
    return abs(i_a_bc - i_ab - i_ac - interaction_information(rho))


def mixed_discord_vs_eof(rho) -> tuple[float, float, float]:
    """``(D_AB + D_AC, E_AB + E_AC, difference)`` for a three-qubit state.

    Both discords measure the second qubit of the pair and are optimized.
    """
    if isinstance(rho, PureState):
        rho = rho.density_matrix()
    if rho.num_qubits != 3:
        raise ValueError("expected a three-qubit state")
    r_ab, r_ac = partial_trace(rho, [0, 1]), partial_trace(rho, [0, 2])
    lhs = quantum_discord(r_ab, "B").discord + quantum_discord(r_ac, "B").discord
    rhs = eof(r_ab) + eof(r_ac)
    return lhs, rhs, lhs - rhs


def mixed_discord_kw_bound(rho) -> tuple[float, float, float]:
    """``(D_AB + D_AC, bound, difference)`` with the Koashi-Winter lower bound

    ``bound = S(B) - S(AB) + E(AC) + S(C) - S(AC) + E(AB)``.

    This bound holds for any three-qubit state, because ``min S(A|B) >= E(AC)``
    survives purification. Dropping the entropy terms to reach
    ``E(AB) + E(AC)`` needs ``S(B) + S(C) >= S(AB) + S(AC)``, which mixed
    states can break.
    """
    if isinstance(rho, PureState):
        rho = rho.density_matrix()
    if rho.num_qubits != 3:
        raise ValueError("expected a three-qubit state")
    r_ab, r_ac = partial_trace(rho, [0, 1]), partial_trace(rho, [0, 2])
    s = [von_neumann_entropy(partial_trace(rho, [q])) for q in range(3)]
    lhs = quantum_discord(r_ab, "B").discord + quantum_discord(r_ac, "B").discord
    bound = (
        s[1] - von_neumann_entropy(r_ab) + eof(r_ac)
        + s[2] - von_neumann_entropy(r_ac) + eof(r_ab)
    )
    return lhs, bound, lhs - bound


def chain_rule_margin(psi: PureState) -> float | None:
    """Margin of ``S(a) + E(b,c) < S(b) + E(a,c)`` where ``S(a) > S(b)``.

    Qubits 0 and 1 play a and b in whichever order makes ``S(a) > S(b)``.
    Returns ``None`` when the two entropies are within 1e-6.
    """
    _pure3(psi)
    s = single_entropies(psi)
    if abs(s[0] - s[1]) <= CHAIN_SKIP:
        return None
    a, b = (0, 1) if s[0] > s[1] else (1, 0)
    return float((s[b] + pair_eof(psi, a, 2)) - (s[a] + pair_eof(psi, b, 2)))


def chain_rule_check(psi: PureState) -> bool | None:
    margin = chain_rule_margin(psi)
    if margin is None:
        return None
    return margin > CHAIN_MARGIN


@dataclass(frozen=True)
class MonogamyReport:
    state_id: str
    S_A: float
    S_B: float
    S_C: float
    D_AB: float
    D_AC: float
    E_AB: float
    E_AC: float
    discord_deficit: float
    eof_deficit: float
    violation: float
    kw_residual_max: float
    interaction_info: float

    def to_dict(self) -> dict:
        return asdict(self)


def monogamy_report(psi: PureState, state_id: str = "", with_optimizer: bool = True) -> MonogamyReport:
    """Monogamy record for qubit A (index 0) of a pure three-qubit state.

    ``kw_residual_max`` is NaN when ``with_optimizer`` is false.
    """
    _pure3(psi)
    s = single_entropies(psi)
    e_ab, e_ac = pair_eof(psi, 0, 1), pair_eof(psi, 0, 2)
    d_ab = float(s[1] - s[2] + e_ac)
    d_ac = float(s[2] - s[1] + e_ab)
    deficit = float(s[0] - e_ab - e_ac)
    return MonogamyReport(
        state_id=state_id,
        S_A=float(s[0]),
        S_B=float(s[1]),
        S_C=float(s[2]),
        D_AB=d_ab,
        D_AC=d_ac,
        E_AB=e_ab,
        E_AC=e_ac,
        discord_deficit=float(s[0] - d_ab - d_ac),
        eof_deficit=deficit,
        violation=-deficit,
        kw_residual_max=kw_residual_all(psi) if with_optimizer else float("nan"),
        interaction_info=interaction_information(psi),
    )


@dataclass(frozen=True)
class LuoReport:
    D_AB: float
    D_BA: float
    J_AB: float
    J_BA: float
    S_A: float
    S_B: float
    margins: tuple[float, float, float, float]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["margins"] = list(self.margins)
        return d


def luo_bound_report(rho: DensityMatrix, require_rank2: bool = False) -> LuoReport:
    """Discord and classical correlations (both sides) against ``min(S_A, S_B)``.

    ``D_AB``/``J_AB`` measure qubit B, ``D_BA``/``J_BA`` measure qubit A.
    """
    if rho.num_qubits != 2:
        raise ValueError(f"expected a two-qubit state, got {rho.num_qubits} qubits")
    if require_rank2 and rho.eigenvalues[2] > RANK2_TOL:
        raise DomainError(f"state has rank > 2 (third eigenvalue {rho.eigenvalues[2]:.3e})")
    s_a = von_neumann_entropy(partial_trace(rho, [0]))
    s_b = von_neumann_entropy(partial_trace(rho, [1]))
    ab, ba = quantum_discord(rho, "B"), quantum_discord(rho, "A")
    bound = min(s_a, s_b)
    vals = (ab.discord, ba.discord, ab.classical, ba.classical)
    return LuoReport(
        D_AB=ab.discord,
        D_BA=ba.discord,
        J_AB=ab.classical,
        J_BA=ba.classical,
        S_A=s_a,
        S_B=s_b,
        margins=tuple(bound - v for v in vals),
    )
