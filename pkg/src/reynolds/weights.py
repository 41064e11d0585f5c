"""Weight decomposition of gl(V) under the diagonal torus and the projector onto z.

The elementary matrices E_ab form a weight basis of gl(V): conjugation by
rho(t) scales E_ab by (chi_a - chi_b)(t). The weight-zero block is the
centralizer z of the torus and the projector onto it masks the other entries.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from src.errors import DomainError
from src.padic.linalg import Matrix, elementary, shape
from src.tropical.characters import Character, TorusElement, zero_character
from src.reynolds.representations import RepSpec, adjoint_action, rho_weights

logger = logging.getLogger(__name__)


def generic_torus_element(spec: RepSpec, spread: int | None = None) -> TorusElement:
    """p^lambda with lambda = (1, B, B^2, ...), separating every weight of gl(V)"""
    weights = rho_weights(spec)
    bound = max((abs(c) for chi in weights for c in chi), default=0)
    base = spread if spread is not None else 4 * bound + 1
    return TorusElement.from_cocharacter([base**i for i in range(spec.rank)], spec.prime)


def endo_weight(spec: RepSpec, a: int, b: int) -> Character:
    """Weight chi_a - chi_b of E_ab"""
    weights = rho_weights(spec)
    return tuple(x - y for x, y in zip(weights[a], weights[b]))


@dataclass(frozen=True)
class WeightDecomposition:
    spec: RepSpec
    spaces: tuple[tuple[Character, tuple[tuple[int, int], ...]], ...]

    def as_dict(self) -> dict[Character, tuple[tuple[int, int], ...]]:
        return dict(self.spaces)

    def characters(self) -> tuple[Character, ...]:
        return tuple(chi for chi, _ in self.spaces)

    def basis(self, chi: Character) -> list[Matrix]:
        m = self.spec.dimension
        return [elementary(m, a, b) for a, b in self.as_dict().get(tuple(chi), ())]

    @property
    def centralizer(self) -> tuple[tuple[int, int], ...]:
        return self.as_dict().get(zero_character(self.spec.rank), ())

    def dimension(self) -> int:
        return sum(len(indices) for _, indices in self.spaces)

    def to_json(self) -> dict:
        return {
            "rep": self.spec.to_json(),
            "weights": [
                {"character": list(chi), "dimension": len(indices), "entries": [list(ab) for ab in indices]}
                for chi, indices in self.spaces
            ],
        }


def weight_decompose(spec: RepSpec) -> WeightDecomposition:
    m = spec.dimension
    grouped: dict[Character, list[tuple[int, int]]] = {}
    for a in range(m):
        for b in range(m):
            grouped.setdefault(endo_weight(spec, a, b), []).append((a, b))
    decomposition = WeightDecomposition(spec, tuple(sorted((chi, tuple(ab)) for chi, ab in grouped.items())))
    if decomposition.dimension() != m * m:
        raise AssertionError("weight spaces do not add up to gl(V)")
    h = generic_torus_element(spec).matrix()
    zero = zero_character(spec.rank)
    for chi, indices in decomposition.spaces:
        for a, b in indices:
            e = elementary(m, a, b)
            if (adjoint_action(spec, h, e) == e) != (chi == zero):
                raise AssertionError(f"E_{a}{b} of weight {chi} disagrees with the torus centralizer")
    logger.debug("gl(V) of dimension %d splits into %d weight spaces", m * m, len(decomposition.spaces))
    return decomposition


def project_z(W: WeightDecomposition, e: Matrix) -> Matrix:
    """Weight-zero component of e"""
    m = W.spec.dimension
    if shape(e) != (m, m):
        raise DomainError("dimension_match", f"endomorphism of shape {shape(e)} for a representation of dimension {m}")
    keep = set(W.centralizer)
    return tuple(tuple(x if (a, b) in keep else Fraction(0) for b, x in enumerate(row)) for a, row in enumerate(e))


@dataclass(frozen=True)
class StarStarReport:
    holds: bool
    complement_weights: tuple[Character, ...]
    trivial_torus: bool

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "complement_weights": [list(chi) for chi in self.complement_weights],
            "trivial_torus": self.trivial_torus,
        }


def check_star_star(spec: RepSpec) -> StarStarReport:
    """The fixed part of gl(V) has a unique torus-stable complement without trivial quotient.

    For a split torus the complement is the sum of the nonzero weight spaces,
    so the check is that no zero character occurs among them.
    """
    W = weight_decompose(spec)
    zero = zero_character(spec.rank)
    complement = tuple(chi for chi in W.characters() if chi != zero)
    trivial = spec.rank == 0
    if trivial:
        logger.warning("rank 0 torus: the complement condition holds vacuously")
    return StarStarReport(zero not in complement, complement, trivial)
