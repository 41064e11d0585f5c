"""Writing g in SL_2(Q_p) as y z with y in Y and z in the diagonal torus."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from src.errors import DomainError, SearchExhaustedError
from src.padic.linalg import Matrix, inverse, is_special_linear, matmul, matrix_to_json
from src.stability.sampling import translation
from src.tree import CompactGroupSpec, LatticeClass, MembershipResult, act, distance, standard_vertex, y_membership
from src.tree.hull import projection_to_fixed_locus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Decomposition:
    g: Matrix
    y: Matrix
    z: Matrix
    exponent: int
    unit: int
    membership: MembershipResult
    hull_diameter: int
    tried: int

    def to_json(self) -> dict:
        return {
            "g": matrix_to_json(self.g),
            "y": matrix_to_json(self.y),
            "z": matrix_to_json(self.z),
            "exponent": self.exponent,
            "unit": self.unit,
            "membership": self.membership.to_json(),
            "hull_diameter": self.hull_diameter,
            "tried": self.tried,
        }


def search_exponents(bound: int) -> Iterator[int]:
    """0, 1, -1, 2, -2, ... up to the bound"""
    yield 0
    for j in range(1, bound + 1):
        yield j
        yield -j


def search_bound(g: Matrix, H: CompactGroupSpec) -> tuple[int, int]:
    """Largest |j| worth trying, with the diameter of the orbit hull of g^-1 o.

    The hull is a star of radius d(x, q) around the fixed projection q of
    x = g^-1 o, and translating by diag(p^j, p^-j) moves q by 2j along the
    apartment.
    """
    o = standard_vertex(H.prime)
    x = act(inverse(g), o)
    q = projection_to_fixed_locus(H, x)
    diameter = 2 * distance(x, q)
    return (distance(o, x) + diameter + 1) // 2 + 1, diameter


def decompose_g(
    g: Matrix,
    window: Iterable[LatticeClass],
    H: CompactGroupSpec,
    units: Sequence[int] = (1,),
) -> Decomposition:
    """First z = diag(u p^j, u^-1 p^-j) with g z^-1 in Y, searching j outward from 0"""
    if not is_special_linear(g):
        raise DomainError("special_linear", "only elements of SL_2 are decomposed")
    window = list(window)
    if not window:
        raise DomainError("nonempty_window", "the window C is empty")
    bound, diameter = search_bound(g, H)
    tried = 0
    for j in search_exponents(bound):
        for u in units:
            z = translation(j, H.prime, u)
            y = matmul(g, inverse(z))
            tried += 1
            membership = y_membership(y, window, H)
            if membership.member:
                if matmul(y, z) != g:
                    raise AssertionError("y z does not reproduce g")
                logger.debug("decomposed after %d candidates with j = %d, u = %d", tried, j, u)
                return Decomposition(g, y, z, j, u, membership, diameter, tried)
    raise SearchExhaustedError(f"no z with |j| <= {bound} puts g z^-1 in Y", diameter)
