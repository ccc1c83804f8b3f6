"""Exact-arithmetic toolkit for lattice polytope invariants.

Everything is computed over exact integers and rationals: Ehrhart
polynomials, the interior-emptiness threshold d(P), normality with
witnesses, twist cohomology by counting rules, dilation bounds for
projective normality and property N_p, and a degree-capped probe of
quadratic generation. A seeded corpus harness verifies the guaranteed
bounds in bulk.
"""

from .cohomology import (
    CohomologyTable,
    autoregularity_from_definition,
    h_table,
    np_bound_from_regularity,
)
from .counting import (
    DilationProfile,
    EhrhartPolynomial,
    d_of_p,
    ehrhart_polynomial,
    extrapolation_check,
    interior_count,
    reciprocity_check,
)
from .errors import (
    CorpusGenerationError,
    InternalInvariantError,
    InvalidInputError,
    NotFullDimensionalError,
    PolynormError,
)
from .geometry import (
    HalfSpace,
    LatticePoint,
    Polytope,
    affine_dim,
    build_polytope,
    scaled_count,
)
from .harness import (
    DEFAULT_CORPUS_SPEC,
    REEVE_RANGE,
    AnalysisRecord,
    CorpusSpec,
    analyze,
    generate_corpus,
    reeve_simplex,
    run_verification,
)
from .normality import (
    BoundReport,
    CorollaryRecord,
    NormalityReport,
    NormalityWitness,
    autoregularity_formula,
    default_cap,
    is_normal,
    is_normal_at_level,
    normality_bound,
    sumset_levels,
    verify_corollary,
    verify_witness,
)
from .syzygy import (
    Fiber,
    N1ProbeReport,
    PointConfiguration,
    build_configuration,
    enumerate_fiber,
    n1_probe,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisRecord", "BoundReport", "CohomologyTable", "CorollaryRecord",
    "CorpusGenerationError", "CorpusSpec", "DEFAULT_CORPUS_SPEC",
    "DilationProfile", "EhrhartPolynomial", "Fiber", "HalfSpace",
    "InternalInvariantError", "InvalidInputError", "LatticePoint",
    "N1ProbeReport", "NormalityReport", "NormalityWitness",
    "NotFullDimensionalError", "PointConfiguration", "Polytope",
    "PolynormError", "REEVE_RANGE", "affine_dim", "analyze",
    "autoregularity_formula", "autoregularity_from_definition",
    "build_configuration", "build_polytope", "d_of_p", "default_cap",
    "ehrhart_polynomial", "enumerate_fiber", "extrapolation_check",
    "generate_corpus", "h_table", "interior_count", "is_normal",
    "is_normal_at_level", "n1_probe", "normality_bound",
    "np_bound_from_regularity", "reciprocity_check", "reeve_simplex",
    "run_verification", "scaled_count", "sumset_levels", "verify_corollary",
    "verify_witness",
]
