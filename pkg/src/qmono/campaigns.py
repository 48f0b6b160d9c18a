"""Single-state analysis, the psi-tilde sweep and seeded verification campaigns.

Every driver returns plain dicts/lists; :mod:`qmono.cli` does the
serialization. Per-sample seeds are spawned from the master seed so a
campaign is a deterministic function of its config.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import permutations

import numpy as np

from .correlations import mutual_information, quantum_discord, von_neumann_entropy
from .entanglement import (
    concurrence_sq_pure_bipartition,
    entanglement_values,
    pair_concurrence_sq,
    pair_eof,
    three_tangle,
)
from .linalg import DensityMatrix, StateError, partial_trace
from .monogamy import (
    BISEPARABLE_TOL,
    OPTIMIZER_TOL,
    chain_rule_margin,
    discord_via_kw,
    eof_monogamy_deficit,
    interaction_information,
    kw_residual_all,
    luo_bound_report,
    mixed_discord_kw_bound,
    mixed_discord_vs_eof,
    monogamy_report,
    mutual_info_decomposition_residual,
)
from .states import (
    PsiTildeParams,
    PureState,
    ghz_class_state,
    haar_random_pure,
    psi_tilde,
    random_ghz_class_params,
    random_mixed_three_qubit,
    random_rank2_two_qubit,
    random_w_class_params,
    spawn_seeds,
)

COMMANDS = ("analyze", "fig1", "w-campaign", "kw-campaign", "luo-campaign", "ghz-fraction", "mixed-ineq")
CAMPAIGNS = COMMANDS[2:]
MEASUREMENT_CLASS = "rank-1 projective measurement on one qubit"

DEFAULT_SAMPLES = {
    "w-campaign": 500,
    "kw-campaign": 100,
    "luo-campaign": 200,
    "ghz-fraction": 1000,
    "mixed-ineq": 200,
}
DEFAULT_TOL = {
    "w-campaign": 1e-8,
    "kw-campaign": 1e-5,
    "luo-campaign": OPTIMIZER_TOL,
    "ghz-fraction": 0.0,
    "mixed-ineq": OPTIMIZER_TOL,
}
DEFAULT_EPSILONS = (1.0, 0.75, 0.5, 0.01)
GHZ_FRACTION_BAND = (0.3, 0.7)
W_EQUALITY_EOF = 1e-4

FIG1_COLUMNS = (
    "p", "epsilon", "S_A", "E_AB", "E_AC", "D_AB", "D_AC",
    "eof_deficit", "violation", "monogamous_flag",
)


@dataclass
class CampaignConfig:
    command: str
    samples: int = 0
    seed: int = 0
    grid_points: int = 101
    epsilons: tuple[float, ...] = DEFAULT_EPSILONS
    tolerance: float | None = None
    output_path: str = ""
    format: str = "json"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.samples == 0:
            self.samples = DEFAULT_SAMPLES.get(self.command, 1)
        if self.tolerance is None:
            self.tolerance = DEFAULT_TOL.get(self.command, 0.0)
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.grid_points < 2:
            raise ValueError("grid must have at least 2 points")
        self.epsilons = tuple(float(e) for e in self.epsilons)
        if not self.epsilons or any(not 0.0 <= e <= 1.0 for e in self.epsilons):
            raise ValueError("epsilons must be a nonempty subset of [0, 1]")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.format not in ("csv", "json"):
            raise ValueError(f"format must be csv or json, got {self.format!r}")

    def to_dict(self) -> dict:
        """Provenance record; the output path is left out so results do not
        depend on where they are written."""
        d = asdict(self)
        d["epsilons"] = list(self.epsilons)
        del d["output_path"]
        return d


# --- analyze ---------------------------------------------------------------

def analyze_state(state, state_id: str = "") -> dict:
    """Full report for a pure three-qubit state or a two/three-qubit density matrix."""
    if isinstance(state, PureState):
        if state.num_qubits == 3:
            return _analyze_pure3(state, state_id)
        state = state.density_matrix()
    if state.num_qubits == 2:
        return _analyze_two_qubit(state, state_id)
    if state.num_qubits == 3:
        return _analyze_mixed3(state, state_id)
    raise StateError(f"analyze supports 2- or 3-qubit states, got {state.num_qubits} qubits")


def _analyze_pure3(psi: PureState, state_id: str) -> dict:
    report = monogamy_report(psi, state_id)
    labels = "ABC"
    optimized = {}
    for i, k in permutations(range(3), 2):
        r = quantum_discord(psi.reduced([i, k]), "B")
        optimized[f"D_{labels[i]}{labels[k]}"] = r.discord
        optimized[f"J_{labels[i]}{labels[k]}"] = r.classical
    closed = {
        f"D_{labels[i]}{labels[k]}": discord_via_kw(psi, i, k, 3 - i - k)
        for i, k in permutations(range(3), 2)
    }
    c2 = {f"{labels[i]}{labels[j]}": pair_concurrence_sq(psi, i, j) for i, j in ((0, 1), (0, 2), (1, 2))}
    c2["A_BC"] = concurrence_sq_pure_bipartition(psi, 0)
    return {
        "kind": "pure-3",
        "measurement_class": MEASUREMENT_CLASS,
        "report": report.to_dict(),
        "discord_closed_form": closed,
        "correlations_optimized": optimized,
        "concurrence_sq": c2,
        "eof": {k: pair_eof(psi, "ABC".index(k[0]), "ABC".index(k[1])) for k in ("AB", "AC", "BC")},
        "three_tangle": three_tangle(psi, 0),
        "chain_rule_margin": chain_rule_margin(psi),
        "mutual_info_decomposition_residual": mutual_info_decomposition_residual(psi),
    }


def _analyze_two_qubit(rho: DensityMatrix, state_id: str) -> dict:
    ent = entanglement_values(rho)
    return {
        "kind": "two-qubit",
        "state_id": state_id,
        "measurement_class": MEASUREMENT_CLASS,
        "rank": rho.rank,
        "mutual_info": mutual_information(rho),
        "concurrence": ent.concurrence,
        "concurrence_sq": ent.concurrence_sq,
        "eof": ent.eof,
        "luo": luo_bound_report(rho).to_dict(),
    }


def _analyze_mixed3(rho: DensityMatrix, state_id: str) -> dict:
    lhs, rhs, slack = mixed_discord_vs_eof(rho)
    _, bound, bound_slack = mixed_discord_kw_bound(rho)
    return {
        "kind": "mixed-3",
        "state_id": state_id,
        "measurement_class": MEASUREMENT_CLASS,
        "S": [von_neumann_entropy(partial_trace(rho, [q])) for q in range(3)],
        "interaction_info": interaction_information(rho),
        "mutual_info_decomposition_residual": mutual_info_decomposition_residual(rho),
        "discord_sum": lhs,
        "eof_sum": rhs,
        "discord_minus_eof": slack,
        "kw_bound": bound,
        "discord_minus_kw_bound": bound_slack,
    }


# --- fig1 sweep ------------------------------------------------------------

def fig1_row(p: float, epsilon: float, endpoint: bool = False) -> dict:
    psi = psi_tilde(PsiTildeParams(p, epsilon))
    r = monogamy_report(psi, with_optimizer=False)
    if endpoint:
        flag = "degenerate"
    else:
        flag = "1" if r.eof_deficit > 0.0 else "0"
    return {
        "p": p,
        "epsilon": epsilon,
        "S_A": r.S_A,
        "E_AB": r.E_AB,
        "E_AC": r.E_AC,
        "D_AB": r.D_AB,
        "D_AC": r.D_AC,
        "eof_deficit": r.eof_deficit,
        "violation": r.violation,
        "monogamous_flag": flag,
    }


def run_fig1(config: CampaignConfig) -> list[dict]:
    """Rows for each epsilon over a uniform p grid on [0, 1].

    Grid endpoints are kept and flagged ``degenerate``.
    """
    ps = np.linspace(0.0, 1.0, config.grid_points)
    last = len(ps) - 1
    return [
        fig1_row(float(p), eps, endpoint=i in (0, last))
        for eps in config.epsilons
        for i, p in enumerate(ps)
    ]


# --- campaigns -------------------------------------------------------------

def _w_sample(seed, tol):
    psi = ghz_class_state(random_w_class_params(seed))
    deficit = eof_monogamy_deficit(psi)
    min_e = min(pair_eof(psi, 0, 1), pair_eof(psi, 0, 2))
    tangle = max(three_tangle(psi, f) for f in range(3))
    equality = deficit > -tol
    ok = deficit <= tol and (not equality or min_e <= W_EQUALITY_EOF) and tangle <= 1e-9
    return ok, {"eof_deficit": deficit, "min_eof": min_e, "three_tangle": tangle}


def _kw_sample(seed, tol):
    r = kw_residual_all(haar_random_pure(3, seed))
    return r <= tol, {"kw_residual": r}


def _luo_sample(seed, tol):
    rep = luo_bound_report(random_rank2_two_qubit(seed), require_rank2=True)
    m = min(rep.margins)
    return m >= -tol, {"min_margin": m}


def _ghz_sample(seed, tol):
    deficit = eof_monogamy_deficit(ghz_class_state(random_ghz_class_params(seed)))
    return True, {"eof_deficit": deficit}


def _mixed_sample(seed, tol):
    _, _, slack = mixed_discord_vs_eof(random_mixed_three_qubit(seed))
    return slack >= -tol, {"slack": slack}


_SAMPLERS = {
    "w-campaign": _w_sample,
    "kw-campaign": _kw_sample,
    "luo-campaign": _luo_sample,
    "ghz-fraction": _ghz_sample,
    "mixed-ineq": _mixed_sample,
}


@dataclass
class CampaignResult:
    summary: dict
    rows: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return bool(self.summary["passed"])


def run_campaign(config: CampaignConfig) -> CampaignResult:
    if config.command not in _SAMPLERS:
        raise ValueError(f"{config.command!r} is not a campaign")
    sampler = _SAMPLERS[config.command]
    rows = []
    for index, seed in enumerate(spawn_seeds(config.seed, config.samples)):
        ok, values = sampler(seed, config.tolerance)
        rows.append({"index": index, "pass": ok, **values})

    n = len(rows)
    pass_count = sum(r["pass"] for r in rows)
    summary = {
        "command": config.command,
        "seed": config.seed,
        "samples": n,
        "pass_count": pass_count,
        "tolerance": config.tolerance,
        "measurement_class": MEASUREMENT_CLASS,
    }
    warnings = []
    cmd = config.command
    if cmd in ("w-campaign", "ghz-fraction"):
        deficits = np.array([r["eof_deficit"] for r in rows])
        summary["violation_fraction"] = float(np.mean(deficits < 0.0))
        summary["max_eof_deficit"] = float(deficits.max())
        summary["min_eof_deficit"] = float(deficits.min())
    else:
        summary["violation_fraction"] = 1.0 - pass_count / n
    if cmd == "w-campaign":
        summary["max_three_tangle"] = max(r["three_tangle"] for r in rows)
        summary["biseparable_tolerance"] = BISEPARABLE_TOL
    elif cmd == "kw-campaign":
        summary["max_residual"] = max(r["kw_residual"] for r in rows)
    elif cmd == "luo-campaign":
        summary["min_margin"] = min(r["min_margin"] for r in rows)
    elif cmd == "mixed-ineq":
        summary["min_slack"] = min(r["slack"] for r in rows)
    elif cmd == "ghz-fraction":
        lo, hi = GHZ_FRACTION_BAND
        frac = summary["violation_fraction"]
        summary["expected_band"] = [lo, hi]
        summary["sampling_measure"] = (
            "lambda0..lambda4 uniform on the positive orthant of the unit 4-sphere, "
            "theta uniform on [0, pi]"
        )
        if not lo <= frac <= hi:
            warnings.append(f"violation fraction {frac:.4f} outside [{lo}, {hi}]; the measure is a modelling choice")
    summary["passed"] = pass_count == n
    summary["warnings"] = warnings
    summary["config"] = config.to_dict()
    return CampaignResult(summary, rows)
