"""Simple Euclidean Jordan algebras (complexified), norms and P(x) identities."""

from .algebra import (
    Family,
    JordanAlgebraSpec,
    JordanElement,
    QuadraticRep,
    SingularElementError,
    SpecMismatchError,
    inverse,
    jordan_product,
    koecher_det,
    koecher_norm_polynomial,
    lmul_operator,
    pfaffian,
    poly_pfaffian,
    quadratic_rep,
    random_element,
    random_real_element,
    spin_coordinate_change,
    unit,
)
from .verify import IDENTITIES, IdentityReport, inversion_jacobian, verify_jordan_identities

__all__ = [
    "Family",
    "IDENTITIES",
    "IdentityReport",
    "JordanAlgebraSpec",
    "JordanElement",
    "QuadraticRep",
    "SingularElementError",
    "SpecMismatchError",
    "inverse",
    "inversion_jacobian",
    "jordan_product",
    "koecher_det",
    "koecher_norm_polynomial",
    "lmul_operator",
    "pfaffian",
    "poly_pfaffian",
    "quadratic_rep",
    "random_element",
    "random_real_element",
    "spin_coordinate_change",
    "unit",
    "verify_jordan_identities",
]
