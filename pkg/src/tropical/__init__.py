from src.tropical.characters import (
    ApartmentPoint,
    Character,
    TorusElement,
    apartment_point,
    character,
    midpoint,
    pairing,
    translate_action,
)
from src.tropical.laurent import (
    LaurentPolynomial,
    MaxAffineFunction,
    check_midpoint_convexity,
    gauss_eval,
    tropicalize,
)
from src.tropical.matrix_functions import (
    MatrixFunction,
    left_translate,
    restrict_to_torus,
    right_translate,
    translated_torus_restriction,
    vertex_seminorm,
)

__all__ = [
    "ApartmentPoint",
    "Character",
    "LaurentPolynomial",
    "MatrixFunction",
    "MaxAffineFunction",
    "TorusElement",
    "apartment_point",
    "character",
    "check_midpoint_convexity",
    "gauss_eval",
    "left_translate",
    "midpoint",
    "pairing",
    "restrict_to_torus",
    "right_translate",
    "translate_action",
    "translated_torus_restriction",
    "tropicalize",
    "vertex_seminorm",
]
