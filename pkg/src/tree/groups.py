"""Compact subgroups of SL_2(Q_p) described by generators and a congruence level.

Two kinds are supported: the integral diagonal torus T(Z_p) and SL_2(Z_p).
Both are handled through topological generators taken from SL_2(Z_(p)), so
acting on a vertex is exact, and through the finite quotient modulo p^N.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Literal

from sympy.ntheory import primitive_root

from src.errors import DomainError, EnumerationBudgetError, LevelEscalationError
from src.padic.linalg import Matrix, as_matrix, diagonal
from src.padic.scalar import check_prime
from src.tree.lattice import LatticeClass, act

logger = logging.getLogger(__name__)

GroupKind = Literal["torus", "sl2"]


@lru_cache(maxsize=None)
def torus_generator_root(p: int) -> int:
    """A unit whose powers are dense in Z_p^* (up to sign when p = 2)"""
    if p == 2:
        return 5
    return int(primitive_root(p * p))


@dataclass(frozen=True)
class CompactGroupSpec:
    kind: GroupKind
    prime: int
    level: int = 1
    level_cap: int = 4

    def __post_init__(self) -> None:
        check_prime(self.prime)
        if self.kind not in ("torus", "sl2"):
            raise DomainError("group_kind", f"unknown compact group kind {self.kind!r}")
        if self.level < 1:
            raise DomainError("positive_level", f"congruence level {self.level} must be at least 1")
        if self.level_cap < self.level:
            raise DomainError("level_cap", f"level cap {self.level_cap} is below the level {self.level}")

    @classmethod
    def torus(cls, prime: int, level: int = 1, level_cap: int = 4) -> "CompactGroupSpec":
        return cls("torus", prime, level, level_cap)

    @classmethod
    def sl2(cls, prime: int, level: int = 1, level_cap: int = 4) -> "CompactGroupSpec":
        return cls("sl2", prime, level, level_cap)

    def generators(self) -> tuple[Matrix, ...]:
        if self.kind == "torus":
            r = Fraction(torus_generator_root(self.prime))
            return (diagonal([r, 1 / r]),)
        return (as_matrix([[1, 1], [0, 1]]), as_matrix([[1, 0], [1, 1]]))

    def congruence_generators(self, level: int) -> tuple[Matrix, ...]:
        """Generators of the level-N congruence subgroup"""
        q = Fraction(self.prime) ** level
        torus = diagonal([1 + q, 1 / (1 + q)])
        if self.kind == "torus":
            return (torus,)
        return (torus, as_matrix([[1, q], [0, 1]]), as_matrix([[1, 0], [q, 1]]))

    def index(self, level: int) -> int:
        """Size of the quotient of the group by its level-N congruence subgroup"""
        p = self.prime
        if self.kind == "torus":
            return (p - 1) * p ** (level - 1)
        return p ** (3 * level) - p ** (3 * level - 2)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.prime, "level": self.level, "level_cap": self.level_cap}


def is_fixed(K: CompactGroupSpec, vertex: LatticeClass) -> bool:
    return all(act(g, vertex) == vertex for g in K.generators())


def required_level(K: CompactGroupSpec, vertex: LatticeClass) -> int:
    """Smallest N >= K.level whose congruence subgroup fixes the vertex"""
    level = K.level
    while not all(act(g, vertex) == vertex for g in K.congruence_generators(level)):
        level += 1
        if level > K.level_cap:
            raise LevelEscalationError(
                f"vertex {vertex} is not fixed by the level {K.level_cap} congruence subgroup of {K.kind}"
            )
    if level > K.level:
        logger.debug("escalated congruence level to %d for vertex %s", level, vertex)
    return level


def orbit(K: CompactGroupSpec, vertex: LatticeClass) -> list[LatticeClass]:
    """The finite K-orbit of a vertex, by closure under the generators"""
    level = required_level(K, vertex)
    bound = K.index(level)
    seen = {vertex}
    queue = deque([vertex])
    while queue:
        current = queue.popleft()
        for g in K.generators():
            image = act(g, current)
            if image not in seen:
                seen.add(image)
                queue.append(image)
        if len(seen) > bound:
            raise AssertionError(f"orbit of {vertex} outgrew the level {level} quotient of size {bound}")
    return sorted(seen)


def coset_representatives(K: CompactGroupSpec, level: int, budget: int | None = None) -> Iterator[Matrix]:
    """Exact lifts with determinant 1 of every element of K modulo p^N"""
    p = K.prime
    size = K.index(level)
    if budget is not None and size > budget:
        raise EnumerationBudgetError(f"{size} representatives at level {level} exceed the budget {budget}")
    logger.debug("enumerating %d representatives of %s modulo %d^%d", size, K.kind, p, level)
    q = p**level
    units = [u for u in range(q) if u % p]
    if K.kind == "torus":
        for u in units:
            yield diagonal([Fraction(u), Fraction(1, u)])
        return
    for a in range(q):
        for b in range(q):
            if a % p:
                for c in range(q):
                    d = Fraction(1 + b * c, a)
                    yield (
                        (Fraction(a), Fraction(b)),
                        (Fraction(c), d),
                    )
            elif b % p:
                for d in range(q):
                    c = Fraction(a * d - 1, b)
                    yield (
                        (Fraction(a), Fraction(b)),
                        (c, Fraction(d)),
                    )


def orbit_by_cosets(K: CompactGroupSpec, vertex: LatticeClass, budget: int | None = None) -> list[LatticeClass]:
    """Orbit computed by acting with every coset representative"""
    level = required_level(K, vertex)
    return sorted({act(k, vertex) for k in coset_representatives(K, level, budget)})
