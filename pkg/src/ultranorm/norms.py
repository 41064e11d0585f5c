"""Diagonal (weighted sup) ultrametric norms on Q_p^m.

A norm is fixed by weight exponents w_i: ||v|| = max_i |v_i| p^(-w_i). All
functions here return valuations, so the norm of v is p^(-norm_eval(N, v)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from src.errors import DomainError
from src.padic.linalg import Matrix, Vec, as_matrix, as_vector, matvec, shape
from src.padic.scalar import (
    INFINITY,
    PadicScalar,
    RationalLike,
    Valuation,
    check_prime,
    format_rational,
    parse_rational,
    vp,
)


@dataclass(frozen=True)
class DiagonalUltraNorm:
    dimension: int
    weight_exponents: tuple[Fraction, ...]
    prime: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        object.__setattr__(self, "weight_exponents", tuple(Fraction(w) for w in self.weight_exponents))
        if self.dimension < 1:
            raise DomainError("positive_dimension", "a norm needs a positive dimension")
        if len(self.weight_exponents) != self.dimension:
            raise DomainError(
                "dimension_match",
                f"{len(self.weight_exponents)} weight exponents for dimension {self.dimension}",
            )

    @classmethod
    def sup(cls, dimension: int, prime: int) -> "DiagonalUltraNorm":
        return cls(dimension, tuple(Fraction(0) for _ in range(dimension)), prime)

    @classmethod
    def from_json(cls, record: dict) -> "DiagonalUltraNorm":
        return cls(
            int(record["dimension"]),
            tuple(parse_rational(w) for w in record["weight_exponents"]),
            int(record["p"]),
        )

    def has_integer_weights(self) -> bool:
        return all(w.denominator == 1 for w in self.weight_exponents)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "weight_exponents": [format_rational(w) for w in self.weight_exponents],
            "p": self.prime,
        }


@dataclass(frozen=True)
class Vector:
    entries: tuple[Fraction, ...]
    prime: int

    @classmethod
    def of(cls, entries: Iterable[RationalLike | PadicScalar], prime: int) -> "Vector":
        values = []
        for x in entries:
            if isinstance(x, PadicScalar) and x.prime != prime:
                raise DomainError("same_prime", f"entry is {x.prime}-adic in a {prime}-adic vector")
            values.append(x.value if isinstance(x, PadicScalar) else x)
        return cls(as_vector(values), check_prime(prime))

    def __len__(self) -> int:
        return len(self.entries)

    def scale(self, c: RationalLike) -> "Vector":
        c = Fraction(c)
        return Vector(tuple(c * x for x in self.entries), self.prime)

    def __add__(self, other: "Vector") -> "Vector":
        if other.prime != self.prime:
            raise DomainError("same_prime", "vectors over different primes")
        if len(other) != len(self):
            raise DomainError("dimension_match", f"vectors of length {len(self)} and {len(other)}")
        return Vector(tuple(x + y for x, y in zip(self.entries, other.entries)), self.prime)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


@dataclass(frozen=True)
class LinearMap:
    matrix: Matrix
    prime: int

    @classmethod
    def of(cls, rows: Iterable[Iterable[RationalLike]], prime: int) -> "LinearMap":
        return cls(as_matrix(rows), check_prime(prime))

    @property
    def shape(self) -> tuple[int, int]:
        return shape(self.matrix)

    def apply(self, v: Vector) -> Vector:
        if v.prime != self.prime:
            raise DomainError("same_prime", "map and vector over different primes")
        return Vector(matvec(self.matrix, v.entries), self.prime)


def _weighted(entries: Sequence[Fraction], weights: Sequence[Fraction], p: int) -> Valuation:
    return min((vp(x, p) + w for x, w in zip(entries, weights) if x != 0), default=INFINITY)


def norm_eval(N: DiagonalUltraNorm, v: Vector | Vec) -> Valuation:
    """min_i (v_p(v_i) + w_i); +inf exactly for the zero vector"""
    entries = v.entries if isinstance(v, Vector) else v
    if len(entries) != N.dimension:
        raise DomainError("dimension_match", f"vector of length {len(entries)} for a norm of dimension {N.dimension}")
    return _weighted(entries, N.weight_exponents, N.prime)


def operator_norm(N_src: DiagonalUltraNorm, N_dst: DiagonalUltraNorm, A: LinearMap | Matrix) -> Valuation:
    """Valuation of the exact operator norm of A between two diagonal norms.

    |||A||| = max_ij |a_ij| p^(-w_dst_i + w_src_j), attained on a basis vector.
    """
    matrix = A.matrix if isinstance(A, LinearMap) else A
    rows, cols = shape(matrix)
    if rows != N_dst.dimension or cols != N_src.dimension:
        raise DomainError(
            "dimension_match",
            f"map of shape {(rows, cols)} between norms of dimensions {N_src.dimension} and {N_dst.dimension}",
        )
    p = N_src.prime
    best: Valuation = INFINITY
    for i, row in enumerate(matrix):
        for j, a in enumerate(row):
            if a != 0:
                best = min(best, vp(a, p) + N_dst.weight_exponents[i] - N_src.weight_exponents[j])
    return best


def attaining_basis_index(N_src: DiagonalUltraNorm, N_dst: DiagonalUltraNorm, A: LinearMap | Matrix) -> int | None:
    """Index j of a basis vector e_j with ||A e_j|| = |||A||| ||e_j||; None for A = 0"""
    matrix = A.matrix if isinstance(A, LinearMap) else A
    target = operator_norm(N_src, N_dst, matrix)
    if target == INFINITY:
        return None
    columns = list(zip(*matrix))
    for j, column in enumerate(columns):
        if norm_eval(N_dst, column) - N_src.weight_exponents[j] == target:
            return j
    raise AssertionError("closed-form operator norm is not attained on a basis vector")


def dual_norm(N: DiagonalUltraNorm, phi: Vector | Vec) -> Valuation:
    """Valuation of ||phi||* = sup |phi(v)| / ||v|| for a functional given by coordinates"""
    entries = phi.entries if isinstance(phi, Vector) else phi
    if len(entries) != N.dimension:
        raise DomainError("dimension_match", "functional and norm dimensions differ")
    return min(
        (vp(c, N.prime) - w for c, w in zip(entries, N.weight_exponents) if c != 0),
        default=INFINITY,
    )


def dual_ball_exponents(N: DiagonalUltraNorm) -> tuple[int, ...]:
    """Smallest valuations a coordinate functional can carry while staying in the dual unit ball"""
    return tuple(math.ceil(w) for w in N.weight_exponents)


def dual_ball_sup(N: DiagonalUltraNorm, v: Vector | Vec) -> Valuation:
    """Valuation of sup over the dual unit ball B of |phi(v)|.

    B only contains functionals with v_p(phi_i) >= w_i, so the sup is taken
    coordinatewise at the rounded-up weights. It equals norm_eval whenever the
    weights are integers.
    """
    entries = v.entries if isinstance(v, Vector) else v
    if len(entries) != N.dimension:
        raise DomainError("dimension_match", "vector and norm dimensions differ")
    return _weighted(entries, dual_ball_exponents(N), N.prime)
