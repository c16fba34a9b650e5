"""empskit: marginal passive-state energies for multi-qubit entanglement analysis.

Computes per-qubit marginal passive energies, verifies the polygon
inequalities they satisfy on pure states, tests three-qubit entanglement
polytope facets, classifies states under SLOCC with an energy indicator,
and exactly diagonalizes small Ising-type spin chains to compare that
indicator against a pairwise entropy criterion.
"""

from .classify import (
    ClassLabel,
    ClassVerdict,
    FacetEvidence,
    NoisyReport,
    PolytopeReport,
    StateBuilderSpec,
    build_biseparable,
    build_dicke,
    build_generalized_dicke,
    build_ghz,
    build_noisy_ghz,
    build_noisy_w,
    build_state,
    build_w,
    classify_three_qubit,
    discriminate_noisy,
    polytope_membership_3q,
    random_biseparable_three_qubit,
    slocc_orbit_sample,
)
from .emps import (
    EmpsVector,
    PolygonReport,
    emps,
    emps_vector,
    eta_indicator,
    geometric_entanglement,
    passive_energy,
    polygon_check,
    total_emps,
)
from .errors import (
    ArgumentError,
    CapacityError,
    EmpskitError,
    NumericError,
    ValidationError,
)
from .qcore import (
    DensityMatrix,
    PureState,
    Spectrum,
    basis_state,
    eig_hermitian,
    partial_trace,
    permute_qubits,
    random_pure_state,
    reduced_density_matrix,
    state_from_dict,
    state_to_dict,
    tensor_product,
    von_neumann_entropy,
)
from .spinchain import (
    GroundStateResult,
    SpinChainSpec,
    SweepRow,
    build_hamiltonian,
    entropy_criterion,
    ground_state,
    indicator_sweep,
    long_range_chain,
    nearest_neighbor_chain,
    pauli_string_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CapacityError",
    "ClassLabel",
    "ClassVerdict",
    "DensityMatrix",
    "EmpsVector",
    "EmpskitError",
    "FacetEvidence",
    "GroundStateResult",
    "NoisyReport",
    "NumericError",
    "PolygonReport",
    "PolytopeReport",
    "PureState",
    "Spectrum",
    "SpinChainSpec",
    "StateBuilderSpec",
    "SweepRow",
    "ValidationError",
    "basis_state",
    "build_biseparable",
    "build_dicke",
    "build_generalized_dicke",
    "build_ghz",
    "build_hamiltonian",
    "build_noisy_ghz",
    "build_noisy_w",
    "build_state",
    "build_w",
    "classify_three_qubit",
    "discriminate_noisy",
    "eig_hermitian",
    "emps",
    "emps_vector",
    "entropy_criterion",
    "eta_indicator",
    "geometric_entanglement",
    "ground_state",
    "indicator_sweep",
    "long_range_chain",
    "nearest_neighbor_chain",
    "partial_trace",
    "passive_energy",
    "pauli_string_matrix",
    "permute_qubits",
    "polygon_check",
    "polytope_membership_3q",
    "random_biseparable_three_qubit",
    "random_pure_state",
    "reduced_density_matrix",
    "slocc_orbit_sample",
    "state_from_dict",
    "state_to_dict",
    "tensor_product",
    "total_emps",
    "von_neumann_entropy",
]
