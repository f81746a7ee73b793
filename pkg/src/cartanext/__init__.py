"""Exact computational engine for graded matrix Lie algebras, symmetric
pairs, and invariant parabolic-geometry extensions between them."""

from .errors import (
    CartanextError,
    ClosureError,
    DependentBasisError,
    InputError,
    InternalCheckError,
    StructuralError,
)
from .linalg import (
    LinearSolution,
    Mat,
    MinimalPolynomial,
    Signature,
    minimal_polynomial,
    solve_linear,
    symmetric_signature,
)
from .lie import (
    CommutantClassification,
    MatrixLieAlgebra,
    Representation,
    StructureConstants,
    commutant,
    invariant_bilinear_forms,
    invariant_complex_structures,
    is_semisimple,
    killing_form,
    make_algebra,
)
from .catalog import (
    GradedAlgebra,
    SymmetricPair,
    build_graded,
    build_pair,
    direct_sum_pairs,
    factor_decomposition,
    isotropy_rep,
    restricted_killing,
    verify_graded,
    verify_pair,
)
from .extension import (
    Curvature,
    Extension,
    curvature,
    is_flat,
    is_holomorphic,
    solve_projective_b2,
    torsion_free,
    validate,
)
from .equivalence import EquivalenceResult, frames_equivalent
from .classify import (
    ExistenceVerdict,
    centralizer_report,
    decide_conformal,
    decide_h_projective,
    decide_projective,
    verify_family_row,
)

__version__ = "0.1.0"

__all__ = [
    "CartanextError",
    "ClosureError",
    "DependentBasisError",
    "InputError",
    "InternalCheckError",
    "StructuralError",
    "LinearSolution",
    "Mat",
    "MinimalPolynomial",
    "Signature",
    "minimal_polynomial",
    "solve_linear",
    "symmetric_signature",
    "CommutantClassification",
    "MatrixLieAlgebra",
    "Representation",
    "StructureConstants",
    "commutant",
    "invariant_bilinear_forms",
    "invariant_complex_structures",
    "is_semisimple",
    "killing_form",
    "make_algebra",
    "GradedAlgebra",
    "SymmetricPair",
    "build_graded",
    "build_pair",
    "direct_sum_pairs",
    "factor_decomposition",
    "isotropy_rep",
    "restricted_killing",
    "verify_graded",
    "verify_pair",
    "Curvature",
    "Extension",
    "curvature",
    "is_flat",
    "is_holomorphic",
    "solve_projective_b2",
    "torsion_free",
    "validate",
    "EquivalenceResult",
    "frames_equivalent",
    "ExistenceVerdict",
    "centralizer_report",
    "decide_conformal",
    "decide_h_projective",
    "decide_projective",
    "verify_family_row",
    "__version__",
]
