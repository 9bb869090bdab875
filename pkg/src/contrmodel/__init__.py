"""Exact cochain complexes, contractions and the model structures on acyclic
retractions and contractions.
"""

from .complex import (
    Complex,
    GradedMap,
    betti,
    cohomology,
    identity,
    induced_map,
    is_chain_map,
    is_cofibration,
    is_fibration,
    is_quasi_iso,
    path_object,
    pullback,
    pushout,
    shift,
    validate_complex,
    zero_map,
)
from .errors import (
    ContrModelError,
    DimensionError,
    FactorizationError,
    InvariantViolation,
    ParseError,
    PreconditionError,
)
from .linalg import GF, QQ, Matrix
from .perturb import nullhomotopy_witness, trick2, trick3
from .report import Report
from .retract import (
    SDR,
    AcyclicRetraction,
    Contraction,
    Morphism,
    check_ar,
    check_ar_morphism,
    check_contr_morphism,
    check_contraction,
    check_sdr,
    trick1,
)

__version__ = "0.1.0"

__all__ = [
    "GF",
    "QQ",
    "SDR",
    "AcyclicRetraction",
    "Complex",
    "ContrModelError",
    "Contraction",
    "DimensionError",
    "FactorizationError",
    "GradedMap",
    "InvariantViolation",
    "Matrix",
    "Morphism",
    "ParseError",
    "PreconditionError",
    "Report",
    "betti",
    "check_ar",
    "check_ar_morphism",
    "check_contr_morphism",
    "check_contraction",
    "check_sdr",
    "cohomology",
    "identity",
    "induced_map",
    "is_chain_map",
    "is_cofibration",
    "is_fibration",
    "is_quasi_iso",
    "nullhomotopy_witness",
    "path_object",
    "pullback",
    "pushout",
    "shift",
    "trick1",
    "trick2",
    "trick3",
    "validate_complex",
    "zero_map",
]
