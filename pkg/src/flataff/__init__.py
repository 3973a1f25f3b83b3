"""Exact decision procedure for flat torsion-free invariant holomorphic
affine connections on finite-dimensional complex Lie algebras.

The package works over the Gaussian rationals throughout.  Floating
point appears only inside the numeric stage of the search module, and
anything it proposes is re-verified exactly before it is reported.
"""

from .exact import GaussRat, ExactMatrix, MultiPoly, poly_det
from .liealg import (
    LieAlgebra,
    StructuralProfile,
    from_structure_constants,
    builtin,
    BUILTIN_NAMES,
    JacobiViolation,
    InconsistentEntry,
)
from .connections import (
    InvariantConnection,
    zero_connection,
    standard_connection,
    torsion,
    curvature,
    ricci,
    projective_change,
    projective_weyl,
    is_flat,
    is_torsion_free,
    is_projectively_flat,
)
from .affine import (
    AffElement,
    AffMap,
    aff_bracket,
    check_homomorphism,
    is_etale,
    canonical_embedding,
    lsa_from_etale,
    etale_from_lsa,
)
from .obstructions import (
    LinearRep,
    h1_dim,
    fundamental_det_poly,
    ObstructionEvidence,
    DecisionReport,
    decide_existence,
)
from .search import SearchConfig, SearchOutcome, run_search

__version__ = "0.1.0"

__all__ = [
    "GaussRat",
    "ExactMatrix",
    "MultiPoly",
    "poly_det",
    "LieAlgebra",
    "StructuralProfile",
    "from_structure_constants",
    "builtin",
    "BUILTIN_NAMES",
    "JacobiViolation",
    "InconsistentEntry",
    "InvariantConnection",
    "zero_connection",
    "standard_connection",
    "torsion",
    "curvature",
    "ricci",
    "projective_change",
    "projective_weyl",
    "is_flat",
    "is_torsion_free",
    "is_projectively_flat",
    "AffElement",
    "AffMap",
    "aff_bracket",
    "check_homomorphism",
    "is_etale",
    "canonical_embedding",
    "lsa_from_etale",
    "etale_from_lsa",
    "LinearRep",
    "h1_dim",
    "fundamental_det_poly",
    "ObstructionEvidence",
    "DecisionReport",
    "decide_existence",
    "SearchConfig",
    "SearchOutcome",
    "run_search",
]
