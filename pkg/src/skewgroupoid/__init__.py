"""Exact verification of partial skew groupoid rings: factorization through a
coarse skew ring and a group skew ring, and separable, Frobenius and
semisimple extension checks."""
from .action import (
    GroupTypeCertificate,
    PartialAction,
    check_lemma31,
    find_group_type,
    rebase_certificate,
    restrict_to_component,
    restrict_to_isotropy,
    validate_partial_action,
)
from .algebra import (
    BimoduleTensorSpace,
    LinMap,
    StructAlgebra,
    VerificationReport,
    center,
    idempotent_ideal_basis,
    multiply,
    tensor_over_subring,
    verify_ring_map,
)
from .errors import (
    SkewGroupoidError,
    InvalidElement,
    AlgebraAxiomViolation,
    AssociativityFailure,
    NotCentralIdempotent,
    NotASubring,
    GroupoidAxiomViolation,
    EmptyObjectSet,
    UnknownObject,
    NotConnected,
    PartialActionAxiomViolation,
    IsoFailure,
    CentralityFailure,
    FrobeniusVerificationFailure,
    ParseError,
)
from .extension import (
    FrobeniusSystem,
    SeparabilityVerdict,
    artinian_verdict,
    center_of_coarse_skew,
    frobenius_composite,
    frobenius_coarse,
    frobenius_group_part,
    lemma52_criterion,
    semisimple_verdict,
    separable_composite,
    separable_direct,
    trace_maps,
)
from .fuzz import FuzzSummary, run_fuzz
from .groupoid import (
    Groupoid,
    Transversal,
    coarse_groupoid,
    connected_components,
    enumerate_transversals,
    isotropy_group,
    structural_iso,
    validate_groupoid,
)
from .instance import InstanceFile, load_fixture, loads_instance, parse_instance, write_instance
from .linalg import solve_linear
from .pipeline import Options, Report, run_pipeline
from .skew import (
    GammaAction,
    IsoWitness,
    SkewRing,
    build_gamma,
    build_iterated_ring,
    build_skew_ring,
    check_remark45,
    induced_beta,
    theorem44_iso,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraAxiomViolation",
    "AssociativityFailure",
    "BimoduleTensorSpace",
    "CentralityFailure",
    "EmptyObjectSet",
    "FrobeniusSystem",
    "FrobeniusVerificationFailure",
    "FuzzSummary",
    "GammaAction",
    "GroupTypeCertificate",
    "Groupoid",
    "GroupoidAxiomViolation",
    "InstanceFile",
    "InvalidElement",
    "IsoFailure",
    "IsoWitness",
    "LinMap",
    "NotASubring",
    "NotCentralIdempotent",
    "NotConnected",
    "Options",
    "ParseError",
    "PartialAction",
    "PartialActionAxiomViolation",
    "Report",
    "SeparabilityVerdict",
    "SkewGroupoidError",
    "SkewRing",
    "StructAlgebra",
    "Transversal",
    "UnknownObject",
    "VerificationReport",
    "artinian_verdict",
    "build_gamma",
    "build_iterated_ring",
    "build_skew_ring",
    "center",
    "center_of_coarse_skew",
    "check_lemma31",
    "check_remark45",
    "coarse_groupoid",
    "connected_components",
    "enumerate_transversals",
    "find_group_type",
    "frobenius_coarse",
    "frobenius_composite",
    "frobenius_group_part",
    "idempotent_ideal_basis",
    "induced_beta",
    "isotropy_group",
    "lemma52_criterion",
    "load_fixture",
    "loads_instance",
    "multiply",
    "parse_instance",
    "rebase_certificate",
    "restrict_to_component",
    "restrict_to_isotropy",
    "run_fuzz",
    "run_pipeline",
    "semisimple_verdict",
    "separable_composite",
    "separable_direct",
    "solve_linear",
    "structural_iso",
    "tensor_over_subring",
    "theorem44_iso",
    "trace_maps",
    "validate_groupoid",
    "validate_partial_action",
    "verify_ring_map",
    "write_instance",
]
