"""Exact-arithmetic toolkit for finite-dimensional Malcev (super)algebras
given by structure constants.

Builds both models of the 7-dimensional simple non-Lie Malcev algebra,
verifies the defining identities exhaustively, decomposes modules into
regular blocks, recovers coordinate algebras through the tensor
factorization engine, and handles the involution machinery, all over
exact rationals.
"""

from .algebra import (
    Algebra,
    Element,
    Operator,
    alpha_operator,
    antiassociator,
    braces,
    h_function,
    jacobian,
    multiply,
    p_function,
    special_form,
)
from .cayley import (
    build_cayley_matrix_algebra,
    build_division_octonions,
    build_sample_coordinates,
    central_quotient,
    commutator_algebra,
    identity_element,
    m7_division,
    m7_over_coordinates,
    m7_split,
    quotient_by_central_subspace,
    tensor_with_coordinates,
    verify_coordinate_algebra,
)
from .embeddings import (
    Embedding,
    canonical_embedding,
    check_annihilator_hypothesis,
    identity_embedding,
    verify_embedding,
)
from .errors import (
    AlgebraMismatch,
    ArityError,
    BundleFormatError,
    CentroidViolation,
    DimensionMismatch,
    FactorizationError,
    GradingError,
    HypothesisViolated,
    IsoCheckFailed,
    LieComponent,
    MalcevError,
    NotClosed,
    NotHomogeneous,
    NotSupercommutative,
    VerificationError,
)
from .factorization import (
    CoordinatizationResult,
    FactorizationResult,
    coordinatize_module,
    kronecker_factorize,
)
from .involution import (
    BilinearForm,
    Involution,
    adjoint_operator,
    canonical_form_m7,
    factorize_with_involution,
    induced_form,
    induced_involution,
    j_admissibility,
    sym_skew_split,
    verify_involution,
)
from .modules import (
    Representation,
    SplitExtension,
    adjoint_restriction,
    almost_faithful,
    centralizer_basis,
    centralizer_diagnostic,
    decompose_into_irreducibles,
    is_irreducible,
    representation_kernel,
    split_null_extension,
    submodule_generated,
    verify_module,
)
from .reports import Report
from .structure import (
    centroid_basis,
    grassmann_envelope,
    ideal_closure,
    is_simple,
    nucleus,
    operator_in_centroid,
)
from .verify import (
    anticommutativity_witness,
    malcev_defect,
    verify_h_variety,
    verify_malcev,
)
