"""Rack-aware Reed-Solomon codes with trace-based single-node repair.

The package builds the monomial repair constructions (basic, multi-base,
prime-rbar, and the homogeneous u=1 degeneration), executes trace repair
with per-rack bandwidth accounting, and checks every rank condition and
bandwidth bound exactly.
"""

from .constructions import (
    CodeInstance,
    EvaluationPlan,
    RepairScheme,
    SchemeParams,
    build,
    build_construction1,
    build_construction2,
    build_cor7,
    c1_params,
    c2_params,
    cor7_params,
    homogeneous_params,
    repair_family,
    verify_rank_condition,
)
from .gf import (
    GF,
    DualBasisPair,
    ExtensionField,
    FieldElement,
    PrimeField,
    expand_in_dual_basis,
    factor_field_order,
    find_irreducible,
    find_primitive_element,
    rank_over_base,
)
from .radix import DigitVector, RadixSystem, index_set_c1, index_set_c2, weight_dwy
from .repair import (
    AuditResult,
    BandwidthReport,
    BoundSet,
    RackMessage,
    RepairError,
    RepairSession,
    RepairTranscript,
    audit,
    bounds,
    execute_repair,
    per_rack_bandwidth,
)
from .rs import CodeSpec, dual_codeword, dual_weights, encode, erasure_decode, poly_eval

__all__ = [name for name in dir() if not name.startswith("_")]
