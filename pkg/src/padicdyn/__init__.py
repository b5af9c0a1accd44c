"""Arithmetic p-adic dynamics of polynomial automorphisms of affine space.

Exact fixed-precision arithmetic in Q_p and its unramified extensions,
automorphism words built from Henon / triangular / affine factors,
indeterminacy loci with the regular and special predicates, residue-level
cycle analysis with Hensel-Newton lifting of periodic points, empirical
uniform period bounds, and a rational certification workflow.
"""

from .errors import (
    BudgetExceeded,
    DegenerateReduction,
    DegreeOverflow,
    DivisionByZero,
    NegativeValuation,
    NoConvergence,
    NoGoodPrime,
    NonIntegralCoefficient,
    NotASimpleRoot,
    NotAUnit,
    NotStabilized,
    PadicDynError,
    ParseError,
    ResidueNotASolution,
    SingularJacobian,
    SingularMatrix,
    SpecMismatch,
    ZeroResidue,
)
from .padic import (
    FieldSpec,
    PadicElement,
    ResidueElement,
    hensel_lift_root,
    root_of_unity_order,
    teichmueller,
)
from .poly import MultiPoly, newton_lift_system
from .autos import AffineAuto, AutoWord, HenonFactor, TriangularAuto, compose_symbolic, reduce_word
from .loci import (
    ProjectivePointSet,
    check_iterate_locus,
    composed_degree,
    henon_coefficient_criterion,
    indeterminacy_locus,
    is_regular,
    is_special_henon,
)
from .dynamics import (
    BoundReport,
    CycleStructure,
    EnumerationResult,
    PeriodicPointRecord,
    TriangularPeriodReport,
    conjugation_transport,
    detect_period,
    empirical_period_bound,
    enumerate_periodic_points,
    lift_periodic,
    permutation_cycles,
    triangular_periods,
)
from .triangular import triangular_normal_form
from .rational import (
    Certificate,
    RationalAffine,
    RationalHenon,
    RationalTriangular,
    RationalWord,
    certify_rational,
    detect_period_exact,
)
from .mapfile import (
    MapDocument,
    build_rational_word,
    build_word,
    parse_document,
    serialize_document,
    word_to_document,
)

__version__ = "0.1.0"

__all__ = [
    "AffineAuto",
    "AutoWord",
    "BoundReport",
    "BudgetExceeded",
    "Certificate",
    "CycleStructure",
    "DegenerateReduction",
    "DegreeOverflow",
    "DivisionByZero",
    "EnumerationResult",
    "FieldSpec",
    "HenonFactor",
    "MapDocument",
    "MultiPoly",
    "NegativeValuation",
    "NoConvergence",
    "NoGoodPrime",
    "NonIntegralCoefficient",
    "NotASimpleRoot",
    "NotAUnit",
    "NotStabilized",
    "PadicDynError",
    "PadicElement",
    "ParseError",
    "PeriodicPointRecord",
    "ProjectivePointSet",
    "RationalAffine",
    "RationalHenon",
    "RationalTriangular",
    "RationalWord",
    "ResidueElement",
    "ResidueNotASolution",
    "SingularJacobian",
    "SingularMatrix",
    "SpecMismatch",
    "TriangularAuto",
    "TriangularPeriodReport",
    "ZeroResidue",
    "build_rational_word",
    "build_word",
    "certify_rational",
    "check_iterate_locus",
    "compose_symbolic",
    "composed_degree",
    "conjugation_transport",
    "detect_period",
    "detect_period_exact",
    "empirical_period_bound",
    "enumerate_periodic_points",
    "henon_coefficient_criterion",
    "hensel_lift_root",
    "indeterminacy_locus",
    "is_regular",
    "is_special_henon",
    "lift_periodic",
    "newton_lift_system",
    "parse_document",
    "permutation_cycles",
    "reduce_word",
    "root_of_unity_order",
    "serialize_document",
    "teichmueller",
    "triangular_normal_form",
    "triangular_periods",
    "word_to_document",
]
