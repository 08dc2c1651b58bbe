"""Local-unitary classification of three-qubit GHZ-class states."""

__version__ = "0.1.0"

from .asd import ASDState, asd_candidates, compute_asd, is_ghz_class, lbps_count, reconstruct
from .classify import (
    ALL_LABELS,
    ClassificationReport,
    FamilyLabel,
    LUDecision,
    canonical_asd,
    classify,
    decide_lu_equivalence,
    is_asd_unique,
)
from .config import DEFAULT_TOLERANCES, Tolerances, get_tolerances, tolerance_scope
from .errors import (
    ConsistencyError,
    DecompositionError,
    DomainError,
    GhzluError,
    InvalidStateError,
    NotGHZClassError,
    NotUnitaryError,
)
from .invariants import (
    GhzInvariants,
    compute_invariants,
    entanglement_measure,
    lu_invariant_ln_rho,
    phase_shift_unitaries,
    rho_iota_transform,
)
from .oracle import OracleVerdict, brute_force_lu_equivalent, random_ghz_asd, sample_subfamily
from .qstate import (
    LocalUnitaryTriple,
    PureState3Q,
    apply_local_unitaries,
    ghz_state,
    haar_random_local_unitary,
    haar_random_triple,
    hyperdeterminant,
    overlap,
    three_tangle,
    w_state,
)

__all__ = [
    "ALL_LABELS",
    "ASDState",
    "ClassificationReport",
    "ConsistencyError",
    "DEFAULT_TOLERANCES",
    "DecompositionError",
    "DomainError",
    "FamilyLabel",
    "GhzInvariants",
    "GhzluError",
    "InvalidStateError",
    "LUDecision",
    "LocalUnitaryTriple",
    "NotGHZClassError",
    "NotUnitaryError",
    "OracleVerdict",
    "PureState3Q",
    "Tolerances",
    "apply_local_unitaries",
    "asd_candidates",
    "brute_force_lu_equivalent",
    "canonical_asd",
    "classify",
    "compute_asd",
    "compute_invariants",
    "decide_lu_equivalence",
    "entanglement_measure",
    "get_tolerances",
    "ghz_state",
    "haar_random_local_unitary",
    "haar_random_triple",
    "hyperdeterminant",
    "is_asd_unique",
    "is_ghz_class",
    "lbps_count",
    "lu_invariant_ln_rho",
    "overlap",
    "phase_shift_unitaries",
    "random_ghz_asd",
    "reconstruct",
    "rho_iota_transform",
    "sample_subfamily",
    "three_tangle",
    "tolerance_scope",
    "w_state",
]
