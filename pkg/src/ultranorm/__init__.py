from src.ultranorm.norms import (
    DiagonalUltraNorm,
    LinearMap,
    Vector,
    attaining_basis_index,
    dual_ball_exponents,
    dual_ball_sup,
    dual_norm,
    norm_eval,
    operator_norm,
)

__all__ = [
    "DiagonalUltraNorm",
    "LinearMap",
    "Vector",
    "attaining_basis_index",
    "dual_ball_exponents",
    "dual_ball_sup",
    "dual_norm",
    "norm_eval",
    "operator_norm",
]
