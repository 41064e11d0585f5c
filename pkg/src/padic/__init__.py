from src.padic.scalar import (
    INFINITY,
    ExactRational,
    ExactValuation,
    PadicScalar,
    Prime,
    Valuation,
    abs_log,
    add,
    bit_length_cap,
    check_prime,
    format_rational,
    format_valuation,
    inv,
    mul,
    parse_rational,
    vp,
    valuation,
)
from src.padic.linalg import Matrix, Vec, ZpRowLattice

__all__ = [
    "INFINITY",
    "ExactRational",
    "ExactValuation",
    "Matrix",
    "PadicScalar",
    "Prime",
    "Valuation",
    "Vec",
    "ZpRowLattice",
    "abs_log",
    "add",
    "bit_length_cap",
    "check_prime",
    "format_rational",
    "format_valuation",
    "inv",
    "mul",
    "parse_rational",
    "vp",
    "valuation",
]
