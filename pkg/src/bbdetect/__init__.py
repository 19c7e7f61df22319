"""Border-basis detection toolkit.

Decide whether a set of polynomial generators is a border basis of the
ideal it generates with respect to some order ideal, verify certificates
for that decision, and encode 3,4-SAT instances as detection problems.
"""

from .detection import (
    BorderCertificate,
    BorderSelection,
    BuchbergerResult,
    DetectResult,
    DetectStatus,
    NeighborPair,
    SearchBudget,
    VerifyResult,
    buchberger_check,
    detect,
    is_prebasis,
    iter_passing_selections,
    make_certificate,
    neighbors,
    s_polynomial,
    verify_certificate,
)
from .order_ideals import (
    BorderCheckReport,
    BudgetExceededError,
    TermSet,
    Violation,
    border,
    border_closure,
    check_border_conditions,
    condition3_via_divisor_sets,
    enumerate_order_ideals,
    is_order_ideal,
    maxdeg,
    random_order_ideal,
    reconstruct_order_ideal,
)
from .polynomials import (
    Polynomial,
    PolySystem,
    dump_system,
    format_polynomial,
    load_system,
    system_support,
)
from .reduction import (
    ReductionRing,
    VariableGadget,
    assignment_to_border,
    border_to_assignment,
    build_gadget,
    check_varclause_property,
    reduce_instance,
    reduction_summary,
)
from .sat import (
    Assignment,
    CnfInstance,
    InvalidInstanceError,
    brute_force_sat,
    evaluate,
    parse_dimacs,
    random_34,
    to_dimacs,
    validate_34,
)
from .terms import Ring, Term, format_term

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "BorderCertificate",
    "BorderCheckReport",
    "BorderSelection",
    "BuchbergerResult",
    "BudgetExceededError",
    "CnfInstance",
    "DetectResult",
    "DetectStatus",
    "InvalidInstanceError",
    "NeighborPair",
    "Polynomial",
    "PolySystem",
    "ReductionRing",
    "Ring",
    "SearchBudget",
    "Term",
    "TermSet",
    "VariableGadget",
    "VerifyResult",
    "Violation",
    "assignment_to_border",
    "border",
    "border_closure",
    "border_to_assignment",
    "brute_force_sat",
    "buchberger_check",
    "build_gadget",
    "check_border_conditions",
    "check_varclause_property",
    "condition3_via_divisor_sets",
    "detect",
    "dump_system",
    "enumerate_order_ideals",
    "evaluate",
    "format_polynomial",
    "format_term",
    "is_order_ideal",
    "is_prebasis",
    "iter_passing_selections",
    "load_system",
    "make_certificate",
    "maxdeg",
    "neighbors",
    "parse_dimacs",
    "random_34",
    "random_order_ideal",
    "reconstruct_order_ideal",
    "reduce_instance",
    "reduction_summary",
    "s_polynomial",
    "system_support",
    "to_dimacs",
    "validate_34",
    "verify_certificate",
]
