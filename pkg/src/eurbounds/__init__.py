"""Entropic uncertainty and information exclusion bounds for multiple
projective measurements on a bipartite state with quantum memory."""

__version__ = "0.1.0"

from .linalg import eig_hermitian, kron, partial_trace
from .states import (
    BipartiteState,
    MeasurementSet,
    ProjectiveMeasurement,
    conditional_b_state,
    conditional_entropy,
    horodecki_state,
    measure_channel,
    measurement_conditional_entropy,
    mutual_information,
    outcome_distribution,
    qubit_basis,
    qubit_y_basis,
    qubit_z_basis,
    qutrit_group,
    qutrit_x_basis,
    random_basis,
    random_state,
    relative_entropy,
    shannon_entropy,
    von_neumann_entropy,
    werner_state,
)
from .bounds import (
    BoundReport,
    MeasurementOrdering,
    PairComplementarity,
    PairCover,
    chain_coefficients,
    compute_report,
    ell_u,
    ell_u_tilde,
    enumerate_pair_covers,
    eur_l1,
    eur_lopt,
    eur_no_memory,
    eur_state_independent,
    eur_total,
    iep_total,
    iep_u1,
    iep_u1_tilde,
    iep_u2_tilde,
    iep_uopt,
    iep_uopt_tilde,
    lhs_eur,
    lhs_iep,
    overlap_matrix,
    pair_complementarity,
)
from .verify import (
    SuiteConfig,
    SuiteReport,
    chain_bruteforce,
    lemma_check,
    run_suite,
)
