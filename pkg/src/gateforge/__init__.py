"""Interaction Hamiltonians for CNOT-family gates and their symmetry structure."""

__version__ = "0.1.0"

from .algebra import (
    SpectralDecomposition,
    SystemShape,
    commutator,
    expm_neg_i,
    frobenius_distance,
    hermitian_eig,
    is_hermitian,
    is_unitary,
    phase_distance,
    tensor,
)
from .gates import BasisLabel, GateKind, GateSpec, apply_to_basis, gate_matrix, operator_form_cnot, pauli, projector
from .symmetry import (
    CommutantResult,
    RotationSearchResult,
    check_product_generators,
    commutant,
    global_rotation,
    isomorphism_transfer_check,
    rotation_generator_search,
    swap_symmetry_check,
)
from .synthesis import (
    JitterReport,
    SynthesisParams,
    block_exponential,
    build_cnot_hamiltonian,
    build_cnot_x_hamiltonian,
    build_toffoli_hamiltonian,
    evolve,
    jitter_analysis,
    verify_gate,
)
