from src.reynolds.coefficients import (
    CoeffModule,
    OmegaSet,
    StarResult,
    check_star,
    coefficient_function,
    coefficient_module,
    default_omega,
    evaluation_matrix,
    generating_family,
    project_k,
    reynolds_identity_check,
)
from src.reynolds.representations import RepSpec, adjoint_action, rho, rho_weights, symbolic_rho
from src.reynolds.weights import StarStarReport, WeightDecomposition, check_star_star, project_z, weight_decompose

__all__ = [
    "CoeffModule",
    "OmegaSet",
    "RepSpec",
    "StarResult",
    "StarStarReport",
    "WeightDecomposition",
    "adjoint_action",
    "check_star",
    "check_star_star",
    "coefficient_function",
    "coefficient_module",
    "default_omega",
    "evaluation_matrix",
    "generating_family",
    "project_k",
    "project_z",
    "reynolds_identity_check",
    "rho",
    "rho_weights",
    "symbolic_rho",
    "weight_decompose",
]
