"""Parallel and anti-parallel Bell-diagonal states: correlations, preparation,
misalignment fidelities and entanglement distribution."""

from .channels import (
    MixedUnitaryChannel,
    apply_channel,
    classical_seed,
    depolarize,
    misaligned_channel,
    optimal_not_effective,
    preparation_channel,
    rotation,
)
from .fidelity import (
    fidelity_block,
    fidelity_difference_sq,
    fidelity_method_a,
    fidelity_method_b,
    fidelity_misaligned_closed,
    fidelity_werner_pair,
    tr_sqrt_2x2,
)
from .linalg import eig_hermitian, kron, partial_trace, psd_sqrt, uhlmann_fidelity
from .measures import LquReport, concurrence, lqu, lqu_bell_closed, lqu_oracle, skew_information, wi_difference
from .protocol import ProtocolOutcome, ThreeQubitState, assemble_initial, cz_gate, mediator_ppt_check, run_protocol
from .states import (
    BellDiagonal,
    Ensemble,
    StateClass,
    bell_eigenvalues,
    class_of,
    correlation_rank,
    ensemble_decomposition,
    from_density,
    is_physical,
    is_separable,
    to_density,
    werner,
)
