"""Coefficient functions of Ad_rho and the Reynolds projector onto constants.

C_H(Ad_rho) is kept in the character basis of the diagonal torus: its
members are Laurent polynomials supported on the weights chi_a - chi_b of
gl(V). C_G(Ad_rho) is handled through a finite generating family of
polynomial functions on SL_n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from src.errors import DomainError
from src.padic.linalg import Matrix, as_vector, independent_rows, matvec, rank
from src.padic.scalar import RationalLike
from src.reynolds.representations import RepSpec, rho, rho_weights, symbolic_rho
from src.reynolds.weights import WeightDecomposition, endo_weight, generic_torus_element, project_z, weight_decompose
from src.tropical.characters import Character, TorusElement, zero_character
from src.tropical.laurent import LaurentPolynomial
from src.tropical.matrix_functions import MatrixFunction, symbolic_matrix

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OmegaSet:
    elements: tuple[TorusElement, ...]

    def __post_init__(self) -> None:
        if not self.elements:
            raise DomainError("nonempty_omega", "Omega must contain at least one element")
        if len({(w.prime, w.n) for w in self.elements}) != 1:
            raise DomainError("dimension_match", "Omega mixes tori of different ranks or primes")

    @property
    def prime(self) -> int:
        return self.elements[0].prime

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def matrices(self) -> list[Matrix]:
        return [w.matrix() for w in self.elements]

    def subset(self, indices: Sequence[int]) -> "OmegaSet":
        return OmegaSet(tuple(self.elements[i] for i in indices))

    @classmethod
    def from_exponents(cls, exponents: Sequence[Sequence[int]], prime: int) -> "OmegaSet":
        """Elements p^lambda for explicit cocharacters lambda in free coordinates"""
        return cls(tuple(TorusElement.from_cocharacter(lam, prime) for lam in exponents))

    def to_json(self) -> list[list[int]]:
        return [[int(x) for x in w.cocharacter()] for w in self.elements]


def default_omega(spec: RepSpec, half_width: int | None = None) -> OmegaSet:
    """Powers p^(j lambda_0) for |j| <= J along a weight-separating cocharacter.

    Without an explicit half width J, the smallest one whose 2J + 1 elements
    reach the dimension of C_H(Ad_rho) is used.
    """
    if half_width is None:
        half_width = len(coefficient_module(spec).characters) // 2
    if half_width < 0:
        raise DomainError("nonnegative_half_width", f"half width {half_width} is negative")
    direction = generic_torus_element(spec).cocharacter()
    exponents = [[j * int(x) for x in direction] for j in range(-half_width, half_width + 1)]
    return OmegaSet.from_exponents(exponents, spec.prime)


@dataclass(frozen=True)
class CoeffModule:
    """C_H(Ad_rho) spanned by the listed characters"""

    spec: RepSpec
    characters: tuple[Character, ...]

    def __len__(self) -> int:
        return len(self.characters)

    def contains(self, f: LaurentPolynomial) -> bool:
        allowed = set(self.characters)
        return all(chi in allowed for chi in f.characters())

    def to_json(self) -> dict:
        return {"rep": self.spec.to_json(), "characters": [list(chi) for chi in self.characters]}


def coefficient_module(spec: RepSpec) -> CoeffModule:
    m = spec.dimension
    characters = {endo_weight(spec, a, b) for a in range(m) for b in range(m)}
    return CoeffModule(spec, tuple(sorted(characters)))


def coefficient_function(
    spec: RepSpec,
    y: Matrix,
    v: Sequence[RationalLike],
    phi: Sequence[RationalLike],
    mode: Literal["conjugation", "plain"] = "conjugation",
) -> LaurentPolynomial:
    """omega -> phi(rho(omega^-1 y omega) v), or phi(rho(y omega) v) in plain mode"""
    v, phi = as_vector(v), as_vector(phi)
    m = spec.dimension
    if len(v) != m or len(phi) != m:
        raise DomainError("dimension_match", f"vector or functional of the wrong length for dimension {m}")
    weights = rho_weights(spec)
    r = rho(spec, y)
    terms = []
    for a in range(m):
        if phi[a] == 0:
            continue
        for b in range(m):
            c = phi[a] * r[a][b] * v[b]
            if c == 0:
                continue
            if mode == "conjugation":
                chi = tuple(x - z for x, z in zip(weights[b], weights[a]))
            else:
                chi = weights[b]
            terms.append((chi, c))
    return LaurentPolynomial(tuple(terms), spec.rank, spec.prime)


def project_k(C: CoeffModule, f: LaurentPolynomial) -> Fraction:
    """Constant coefficient of f, the fixed part of C_H(Ad_rho)"""
    if not C.contains(f):
        raise DomainError("module_span", "function is not in the span of the coefficient module")
    return f.coefficient(zero_character(C.spec.rank))


def reynolds_identity_check(
    spec: RepSpec,
    y: Matrix,
    v: Sequence[RationalLike],
    phi: Sequence[RationalLike],
    W: WeightDecomposition | None = None,
    C: CoeffModule | None = None,
) -> bool:
    """project_k of the conjugation coefficient equals phi(pi_z(rho(y)) v)"""
    W = W or weight_decompose(spec)
    C = C or coefficient_module(spec)
    lhs = project_k(C, coefficient_function(spec, y, v, phi))
    projected = matvec(project_z(W, rho(spec, y)), as_vector(v))
    rhs = sum((a * x for a, x in zip(as_vector(phi), projected)), Fraction(0))
    if lhs != rhs:
        logger.error("Reynolds identity failed: %s != %s", lhs, rhs)
    return lhs == rhs


def evaluation_matrix(omega: OmegaSet, C: CoeffModule) -> Matrix:
    """Rows omega, columns chi(omega) for the characters of C"""
    return tuple(tuple(w.character_value(chi) for chi in C.characters) for w in omega)


@dataclass(frozen=True)
class StarResult:
    holds: bool
    rank: int
    dimension: int
    basis_indices: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "rank": self.rank,
            "dimension": self.dimension,
            "basis_indices": list(self.basis_indices) if self.basis_indices is not None else None,
        }


def check_star(omega: OmegaSet, C: CoeffModule) -> StarResult:
    """Evaluations at Omega span the dual of C, with a row basis Omega_b when they do"""
    M = evaluation_matrix(omega, C)
    r = rank(M)
    if r < len(C):
        logger.info("evaluations at %d elements of Omega reach rank %d < %d", len(omega), r, len(C))
        return StarResult(False, r, len(C), None)
    return StarResult(True, r, len(C), independent_rows(M))


def symbolic_rho_inverse(spec: RepSpec) -> tuple[tuple[MatrixFunction, ...], ...]:
    """rho(X^-1) as functions of X, through the adjugate"""
    adj = symbolic_matrix(spec.n).adjugate()
    images = [MatrixFunction.from_expr(adj[i, j], spec.n, spec.prime).poly for i in range(spec.n) for j in range(spec.n)]
    return tuple(tuple(f.substitute(images) for f in row) for row in symbolic_rho(spec))


def generating_family(spec: RepSpec, include_rho: bool = True) -> list[MatrixFunction]:
    """Functions y -> rho(y)_ab rho(y^-1)_cd spanning C_G(Ad_rho), optionally with the rho(y)_ab.

    Members are reduced modulo det - 1 and repeated ones dropped.
    """
    r = symbolic_rho(spec)
    r_inv = symbolic_rho_inverse(spec)
    m = spec.dimension
    seen: dict[MatrixFunction, None] = {}

    def keep(f: MatrixFunction) -> None:
        nf = f.normal_form()
        if not nf.is_zero():
            seen.setdefault(nf, None)

    keep(MatrixFunction.constant(1, spec.n, spec.prime))
    for a in range(m):
        for b in range(m):
            if include_rho:
                keep(r[a][b])
            for c in range(m):
                for d in range(m):
                    keep(r[a][b] * r_inv[c][d])
    logger.debug("generating family of C_G(Ad_rho) has %d distinct members", len(seen))
    return list(seen)

