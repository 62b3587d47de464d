"""saalib: exact analysis of symplectic alternating algebras over GF(p)."""

from .linalg import (
    FieldElement,
    GramMatrix,
    Matrix,
    PrimeField,
    Subspace,
    is_prime,
    nullspace,
    perp,
    rref,
    solve_against_form,
    subspace_intersect,
    subspace_sum,
)
from .algebra import (
    Algebra,
    BasisVector,
    ChainError,
    NotNilpotentError,
    Presentation,
    PresentationTriple,
    SeriesReport,
    StructureTensor,
    build_algebra,
    form,
    full_space,
    is_abelian,
    is_ideal,
    is_isotropic,
    is_maximal_class_criterion,
    isotropic_ideal_chain,
    lower_central_series,
    maximal_class_structure_check,
    multiply,
    nilpotency_class,
    product_space,
    rank,
    series_report,
    upper_central_series,
    validate_nilpotent_presentation,
    zero_space,
)
from .construct import (
    CatalogEntry,
    ClassPrediction,
    ConstructionError,
    ScalingWitness,
    TripleSet,
    catalog,
    catalog_entry,
    construct_minimal,
    fingerprint,
    omega,
    omega_table,
    predict_min_class,
    try_scaling_isomorphism,
    verify_scaling_witness,
)
from .checks import (
    CheckResult,
    Discovery,
    ScanConfig,
    ScanReport,
    check_axioms,
    check_duality,
    check_rank_two_structure,
    check_series_step_bounds,
    random_nilpotent_presentation,
    sample_presentation,
    scan,
)
from .presfile import (
    ParseError,
    PresentationFile,
    emit_presentation,
    parse_presentation,
    parse_presentation_file,
)

__version__ = "0.1.0"
