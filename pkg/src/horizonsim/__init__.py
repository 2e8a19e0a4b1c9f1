"""Causal, unitary qubit model of black hole evaporation.

A small state-vector simulator that knows which qubits sit behind a horizon,
rejects gates that would move information outward, and tracks the
inside/outside entanglement entropy as qubits fall in.
"""

from .entropy import bipartite_entropy, hermitian_eigenvalues, reduced_density, von_neumann_entropy
from .errors import CausalityError, HorizonSimError
from .horizon import (
    Circuit,
    Crossing,
    CausalityViolation,
    EntropyTrace,
    Region,
    TimelineEvent,
    ViolationKind,
    apply_crossing,
    check_event,
    make_circuit,
    run,
    validate_circuit,
)
from .papermodel import (
    EnsembleConfig,
    ModelParams,
    PageCurve,
    Schedule,
    build_canonical,
    ensemble_page_curve,
    hawking_unitary,
    s_bis,
    s_prime,
    stage_states,
    staircase,
)
from .statevec import (
    CNOT,
    SWAP,
    Matrix2,
    PureState,
    Unitary1Q,
    apply_cnot,
    apply_gate,
    apply_swap,
    apply_unitary1q,
    check_unitary,
    init_product_state,
)

__version__ = "0.1.0"
