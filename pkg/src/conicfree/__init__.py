"""Exact freeness and nearly-freeness analysis for plane conic arrangements."""

from conicfree.combinatorics import (
    DArrangementType,
    EnumerationCertificate,
    IncidenceStructure,
    WeakCombinatorialType,
    bezout_count_check,
    d_arrangement_count,
    enumerate_nearly_free_bound,
    enumerate_theorem_char,
    enumerate_theorem_near,
    is_combinatorially_supersolvable,
    weak_type_from_survey,
)
from conicfree.corpus import (
    CorpusEntry,
    CorpusNotFoundError,
    corpus_entries,
    entry,
    run_regression,
)
from conicfree.freeness import (
    FREE,
    INDETERMINATE,
    NEARLY_FREE,
    NEITHER,
    DeformationCheck,
    FreenessReport,
    LctEntry,
    UnsupportedTypeError,
    arnold_exponent,
    build_report,
    check_bound_consistency,
    check_deformation,
    effective_inventory,
    eta_of,
    lct,
    mdr_lower_bound,
)
from conicfree.jacobian import (
    AtLeast,
    HilbertProfile,
    JacobianContext,
    SyzygyWitness,
    UnstableWindowError,
    hilbert_profile,
    mdr,
    milnor_dim,
    syzygy_matrix,
    total_tjurina,
    verify_witness,
)
from conicfree.linalg import (
    DEFAULT_POLICY,
    EXACT_POLICY,
    KernelBasis,
    LinalgPolicy,
    RatMatrix,
    kernel_basis,
    rank,
    rank_certified,
)
from conicfree.locus import (
    BranchJet,
    ConicArrangement,
    IrrationalTangentFrameError,
    LocusSurvey,
    NotSingularError,
    SingType,
    SingularPointRecord,
    branch_jet,
    classify_point,
    local_intersection_multiplicity,
    rational_pair_intersections,
    survey,
)
from conicfree.poly import (
    AffinePolynomial,
    ConicForm,
    HomogeneousPolynomial,
    NonHomogeneousError,
    PolynomialSyntaxError,
    ProjectivePoint,
    conic_is_smooth,
    dehomogenize,
    parse_polynomial,
    partial_derivative,
)
from conicfree.report import Analysis, analysis_document, analyze_curve, render_text, to_json

__version__ = "0.1.0"
