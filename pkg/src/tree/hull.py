"""Convex hulls, fixed points of compact groups and the window C with its set Y."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Literal

from src.errors import DomainError, LevelEscalationError
from src.padic.linalg import Matrix, inverse
from src.padic.scalar import vp
from src.tree.groups import CompactGroupSpec, is_fixed, orbit, torus_generator_root
from src.tree.lattice import (
    LatticeClass,
    act,
    ancestor,
    apartment_projection,
    ball,
    geodesic,
    standard_vertex,
)

logger = logging.getLogger(__name__)


def convex_hull(vertices: Iterable[LatticeClass]) -> list[LatticeClass]:
    """Smallest subtree containing the vertices.

    Every vertex is joined to the common ancestor of the whole set, whose
    level is the lowest pairwise meet level.
    """
    members = sorted(set(vertices))
    if not members:
        raise DomainError("nonempty_set", "the convex hull of an empty set is undefined")
    primes = {v.prime for v in members}
    if len(primes) != 1:
        raise DomainError("same_prime", f"vertices over different primes {sorted(primes)}")
    p = primes.pop()
    first = members[0]
    low = min(min(v.a for v in members), min((vp(v.b - first.b, p) for v in members[1:]), default=first.a))
    hull = set()
    for v in members:
        hull.update(ancestor(v, level) for level in range(int(low), v.a + 1))
    return sorted(hull)


def is_stable(K: CompactGroupSpec, vertices: Iterable[LatticeClass]) -> bool:
    members = set(vertices)
    return all(act(g, v) in members for g in K.generators() for v in members)


@dataclass(frozen=True)
class FixedPoint:
    """A fixed vertex, or the midpoint of a fixed edge when ``other`` is set"""

    vertex: LatticeClass
    other: LatticeClass | None = None

    @property
    def is_midpoint(self) -> bool:
        return self.other is not None

    def to_json(self) -> dict:
        record = {"vertex": self.vertex.to_json(), "midpoint": self.is_midpoint}
        if self.other is not None:
            record["other"] = self.other.to_json()
        return record


def fixed_point_in_hull(K: CompactGroupSpec, hull: Iterable[LatticeClass]) -> FixedPoint:
    members = sorted(set(hull))
    if not members:
        raise DomainError("nonempty_set", "no fixed point in an empty hull")
    if not is_stable(K, members):
        raise DomainError("stable_hull", f"the hull is not stable under {K.kind}")
    for v in members:
        if is_fixed(K, v):
            return FixedPoint(v)
    for v in members:
        for g in K.generators():
            w = act(g, v)
            if w != v and all({act(h, v), act(h, w)} == {v, w} for h in K.generators()):
                return FixedPoint(v, w)
    raise AssertionError(f"a {K.kind}-stable hull of {len(members)} vertices has no fixed point")


def fixed_locus_window(K: CompactGroupSpec, radius: int) -> list[LatticeClass]:
    """Every vertex within the radius of o fixed by K"""
    return [v for v in ball(standard_vertex(K.prime), radius) if is_fixed(K, v)]


def fixed_depth(p: int) -> int:
    """How far from the standard apartment T(Z_p) still fixes vertices"""
    r = torus_generator_root(p)
    return int(vp(r * r - 1, p))


def default_window(p: int, half_length: int = 1) -> list[LatticeClass]:
    """T(Z_p)-fixed vertices whose apartment projection lies in [-half_length, half_length]"""
    if half_length < 0:
        raise DomainError("nonnegative_radius", f"window half length {half_length} is negative")
    torus = CompactGroupSpec.torus(p)
    radius = half_length + fixed_depth(p)
    window = [v for v in fixed_locus_window(torus, radius) if abs(apartment_projection(v)) <= half_length]
    logger.debug("window of half length %d at p = %d has %d vertices", half_length, p, len(window))
    return window


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: LatticeClass | None
    method: Literal["hull", "fixed_projection"]
    hull_size: int | None = None

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "witness": self.witness.to_json() if self.witness else None,
            "method": self.method,
            "hull_size": self.hull_size,
        }


def projection_to_fixed_locus(H: CompactGroupSpec, vertex: LatticeClass) -> LatticeClass:
    """First H-fixed vertex on the geodesic from the vertex to o"""
    for v in geodesic(vertex, standard_vertex(vertex.prime)):
        if is_fixed(H, v):
            return v
    raise DomainError("fixed_standard_vertex", f"{H.kind} does not fix the standard vertex")


def y_membership(y: Matrix, window: Iterable[LatticeClass], H: CompactGroupSpec) -> MembershipResult:
    """Whether the hull of H . y^-1 o meets the window, with a witnessing vertex"""
    C = set(window)
    if not C:
        raise DomainError("nonempty_window", "the window C is empty")
    x = act(inverse(y), standard_vertex(H.prime))
    try:
        hull = convex_hull(orbit(H, x))
    except LevelEscalationError:
        # the orbit hull meets the fixed locus only at the projection of x
        witness = projection_to_fixed_locus(H, x)
        member = witness in C
        return MembershipResult(member, witness if member else None, "fixed_projection")
    hits = [v for v in hull if v in C]
    return MembershipResult(bool(hits), hits[0] if hits else None, "hull", len(hull))
