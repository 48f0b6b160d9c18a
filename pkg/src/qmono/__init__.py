"""Quantum discord, entanglement of formation and monogamy checks for few-qubit states."""
from ._backend import BACKEND
from .correlations import (
    DiscordResult,
    MeasurementAngles,
    classical_correlations,
    measured_conditional_entropy,
    mutual_information,
    quantum_discord,
    von_neumann_entropy,
)
from .entanglement import (
    EntanglementValues,
    binary_entropy,
    concurrence,
    concurrence_sq_pure_bipartition,
    eof,
    spin_flip,
    three_tangle,
)
from .linalg import DensityMatrix, DomainError, StateError, hermitian_eigen, kron, partial_trace, psd_sqrt
from .monogamy import (
    LuoReport,
    MonogamyReport,
    chain_rule_check,
    discord_monogamy_deficit,
    discord_via_kw,
    eof_monogamy_deficit,
    interaction_information,
    kw_residual,
    luo_bound_report,
    mixed_discord_vs_eof,
    monogamy_report,
    mutual_info_decomposition_residual,
)
from .states import (
    GhzClassParams,
    PsiTildeParams,
    PureState,
    ghz_class_state,
    haar_random_pure,
    psi_tilde,
    purify_rank2,
    random_rank2_two_qubit,
    w_class_state,
)

__version__ = "0.1.0"
