"""Spectrum-based separability criteria and isospectral state constructions.

The package evaluates the entanglement criteria that depend only on the
spectrum of a bipartite state and its reductions (Renyi / conditional
Tsallis entropic tests, the reduction criterion, PPT) and builds the
state pairs that expose their limits: a separable, locally identical
counterpart for every Werner state in odd dimension, and a two-qubit
phase-gate pair that is isospectral with equal reductions yet has
opposite separability.
"""

from .linalg import (
    DEFAULT_TOL,
    BipartiteState,
    ComplexMatrix,
    ConvergenceError,
    EigResult,
    InvalidStateError,
    LinalgError,
    PowerResult,
    Spectrum,
    hermitian_eig,
    kron,
    matrix_power,
    partial_trace,
    partial_transpose,
    schmidt_coefficients,
)
from .criteria import (
    DEFAULT_ALPHA_GRID,
    SIGN_TOLERANCE,
    CriterionReport,
    SignCheck,
    conditional_tsallis,
    criterion_report,
    entropic_gap,
    entropic_sign_check,
    horodecki_chsh,
    negative_alpha_bound,
    ppt_criterion,
    reduction_criterion,
    renyi_entropy,
)
from .states import (
    antisymmetric_projector,
    flip_operator,
    isospectral_counterpart,
    maximally_entangled_state,
    me_basis_state,
    product_state,
    pure_state,
    rank_counterexample,
    separable_projector,
    symmetric_projector,
    werner,
    werner_counterpart,
)
from .twoqubit import (
    ENTANGLEMENT_THRESHOLD,
    POSITIVITY_BOUND,
    PairAudit,
    det_partial_transpose,
    family_r_matrix,
    family_state,
    family_transformed,
    pauli,
    phase_gate,
    qubit_pair_audit,
    r_matrix,
    rho_from_r,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DEFAULT_ALPHA_GRID",
    "SIGN_TOLERANCE",
    "POSITIVITY_BOUND",
    "ENTANGLEMENT_THRESHOLD",
    "BipartiteState",
    "ComplexMatrix",
    "Spectrum",
    "EigResult",
    "PowerResult",
    "CriterionReport",
    "SignCheck",
    "PairAudit",
    "LinalgError",
    "ConvergenceError",
    "InvalidStateError",
    "kron",
    "partial_trace",
    "partial_transpose",
    "hermitian_eig",
    "matrix_power",
    "schmidt_coefficients",
    "renyi_entropy",
    "entropic_gap",
    "conditional_tsallis",
    "reduction_criterion",
    "ppt_criterion",
    "negative_alpha_bound",
    "entropic_sign_check",
    "horodecki_chsh",
    "criterion_report",
    "flip_operator",
    "symmetric_projector",
    "antisymmetric_projector",
    "werner",
    "me_basis_state",
    "separable_projector",
    "isospectral_counterpart",
    "werner_counterpart",
    "rank_counterexample",
    "maximally_entangled_state",
    "pure_state",
    "product_state",
    "pauli",
    "r_matrix",
    "rho_from_r",
    "phase_gate",
    "family_r_matrix",
    "family_state",
    "family_transformed",
    "det_partial_transpose",
    "qubit_pair_audit",
]
