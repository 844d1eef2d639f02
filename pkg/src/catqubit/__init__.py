"""Quantum logic on optical coherent states: exact simulation and benchmarks.

Qubits are encoded as |0>_L = |0> (vacuum) and |1>_L = |alpha>; states live
in :mod:`catqubit.states` as finite superpositions of coherent states, gates
in :mod:`catqubit.gates`, measurements in :mod:`catqubit.measurement`,
benchmarks in :mod:`catqubit.fidelity`, and an independent truncated-Fock
verification engine in :mod:`catqubit.fock`.
"""

from .states import (
    BeamsplitterParams,
    CoherentTerm,
    SuperposedState,
    ZeroNormError,
    apply_beamsplitter,
    apply_displacement,
    apply_phase,
    coherent_overlap,
    coherent_state,
    compact,
    inner_product,
    norm,
    normalize,
    single_mode,
    state_from_json,
    state_to_json,
    tensor,
    vacuum,
)
from .gates import (
    CodeSpaceError,
    GateOutcome,
    LogicalParams,
    bit_flip,
    cnot,
    cnot_branches,
    controlled_sign,
    controlled_sign_ideal,
    encode_qubit,
    hadamard_branches,
    hadamard_via_cat,
    ideal_hadamard_output,
    phase_rotation_exact,
    phase_rotation_ideal,
)
from .measurement import (
    MeasurementRecord,
    ReadoutResult,
    cat_basis_measure,
    computational_readout,
    homodyne_pdf,
    parity_overlap,
    parity_probabilities,
)
from .fidelity import (
    FidelityPoint,
    SweepConfig,
    bs_phase_approximation_error,
    cnot_fidelity_point,
    fidelity,
    ideal_cnot_output,
    points_to_csv,
    points_to_dict,
    sweep,
)

__version__ = "0.1.0"
