"""Noncommutative deformation algebra over k^r.

Exact arithmetic in free r-pointed (path) algebras, degree-truncated
two-sided ideal computation, and construction of semi-universal
deformation base algebras from tangent/obstruction data.
"""

from .fields import QQ, PrimeField
from .errors import (
    NCDeformError,
    ParseError,
    ContractViolation,
    OracleConsistencyError,
    MalformedTableError,
    DegreeBoundError,
)
from .algebra import Arrow, AlgebraSignature, NCPoly, make_signature, multiply, component, graded_piece, free_dim
from .rewriting import (
    Presentation,
    MonomialOrder,
    DEGLEX,
    GroebnerBasis,
    Inconclusive,
    complete,
    normal_form,
    quotient_dims,
    total_dim_if_finite,
    abelianize,
)
from .deformation import (
    BimoduleDims,
    BasisVector,
    AInfinityData,
    InducedOracle,
    AInfinityOracle,
    dualize_products,
    lift_obstructions,
    nakayama_reduce,
)

__all__ = [
    "QQ", "PrimeField",
    "NCDeformError", "ParseError", "ContractViolation", "OracleConsistencyError",
    "MalformedTableError", "DegreeBoundError",
    "Arrow", "AlgebraSignature", "NCPoly", "make_signature", "multiply", "component",
    "graded_piece", "free_dim",
    "Presentation", "MonomialOrder", "DEGLEX", "GroebnerBasis", "Inconclusive", "complete",
    "normal_form", "quotient_dims", "total_dim_if_finite", "abelianize",
    "BimoduleDims", "BasisVector", "AInfinityData", "InducedOracle", "AInfinityOracle",
    "dualize_products", "lift_obstructions", "nakayama_reduce",
]
