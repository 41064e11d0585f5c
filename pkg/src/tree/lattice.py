"""Vertices of the Bruhat-Tits tree of SL_2(Q_p) as homothety classes of lattices.

Every class has a unique representative spanned by the columns of
[[p^a, b], [0, 1]] with a in Z and b in Z[1/p] reduced into [0, p^a). The
vertex (a, b) has parent (a - 1, b mod p^(a-1)) and the p children
(a + 1, b + c p^a); the standard apartment is the line b = 0.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from sympy import ZZ, Matrix as SymMatrix
from sympy.matrices.normalforms import smith_normal_form

from src.errors import DomainError
from src.padic.linalg import Matrix, as_matrix, det, inverse, matmul, matrix_valuation, shape
from src.padic.scalar import INFINITY, RationalLike, check_prime, format_rational, parse_rational, to_fraction, vp


def reduce_mod_power(x: RationalLike, a: int, p: int) -> Fraction:
    """Representative of x + p^a Z_p in Z[1/p] ∩ [0, p^a)"""
    x = to_fraction(x)
    if x == 0 or vp(x, p) >= a:
        return Fraction(0)
    t = max(0, vp(x.denominator, p))
    d = x.denominator // p**t
    modulus = p ** (a + t)
    c = x.numerator * pow(d, -1, modulus) % modulus
    return Fraction(c, p**t)


@dataclass(frozen=True, order=True)
class LatticeClass:
    a: int
    b: Fraction
    prime: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        object.__setattr__(self, "a", int(self.a))
        b = to_fraction(self.b)
        if reduce_mod_power(b, self.a, self.prime) != b:
            raise DomainError("canonical_vertex", f"b = {b} is not reduced modulo {self.prime}^{self.a}")
        object.__setattr__(self, "b", b)

    @property
    def basis(self) -> Matrix:
        return ((Fraction(self.prime) ** self.a, self.b), (Fraction(0), Fraction(1)))

    def to_json(self) -> dict:
        return {"a": self.a, "b": format_rational(self.b), "p": self.prime}

    @classmethod
    def from_json(cls, record: dict) -> "LatticeClass":
        return cls(int(record["a"]), parse_rational(record["b"]), int(record["p"]))

    def __str__(self) -> str:
        return f"({self.a}, {self.b})"


def standard_vertex(p: int) -> LatticeClass:
    """The class of Z_p^2, fixed by SL_2(Z_p)"""
    return LatticeClass(0, Fraction(0), p)


def apartment_vertex(s: int, p: int) -> LatticeClass:
    """Class of diag(p^s, 1) Z_p^2 on the standard apartment"""
    return LatticeClass(s, Fraction(0), p)


def canonicalize(basis: Sequence[Sequence[RationalLike]], p: int) -> LatticeClass:
    """Class of the Z_p-lattice spanned by the columns of a 2 x k matrix"""
    m = as_matrix(basis)
    if shape(m)[0] != 2:
        raise DomainError("dimension_match", f"lattice generators must have 2 rows, got {shape(m)[0]}")
    columns = list(zip(*m))
    nonzero_bottom = [i for i, (_, z) in enumerate(columns) if z != 0]
    if not nonzero_bottom:
        raise DomainError("nonsingular_basis", "generators span no lattice of full rank")
    pivot = min(nonzero_bottom, key=lambda i: vp(columns[i][1], p))
    x_piv, z_piv = columns[pivot]
    tops = [x - (z / z_piv) * x_piv for i, (x, z) in enumerate(columns) if i != pivot]
    alpha = min((vp(x, p) for x in tops if x != 0), default=INFINITY)
    if alpha == INFINITY:
        raise DomainError("nonsingular_basis", "generators span no lattice of full rank")
    delta = vp(z_piv, p)
    unit = z_piv / Fraction(p) ** delta
    a = alpha - delta
    return LatticeClass(a, reduce_mod_power(x_piv / unit / Fraction(p) ** delta, a, p), p)


def act(g: Matrix, vertex: LatticeClass) -> LatticeClass:
    if shape(g) != (2, 2) or det(g) == 0:
        raise DomainError("nonsingular_basis", "only invertible 2x2 matrices act on the tree")
    return canonicalize(matmul(g, vertex.basis), vertex.prime)


def _same_prime(*vertices: LatticeClass) -> int:
    primes = {v.prime for v in vertices}
    if len(primes) != 1:
        raise DomainError("same_prime", f"vertices over different primes {sorted(primes)}")
    return primes.pop()


def distance(u: LatticeClass, v: LatticeClass) -> int:
    """Elementary divisor gap of the change of basis between u and v"""
    p = _same_prime(u, v)
    change = matmul(inverse(u.basis), v.basis)
    return int(vp(det(change), p) - 2 * matrix_valuation(change, p))


def ancestor(vertex: LatticeClass, level: int) -> LatticeClass:
    if level > vertex.a:
        raise DomainError("ancestor_level", f"level {level} lies below vertex {vertex}")
    return LatticeClass(level, reduce_mod_power(vertex.b, level, vertex.prime), vertex.prime)


def meet_level(u: LatticeClass, v: LatticeClass) -> int:
    """Level of the lowest common ancestor"""
    p = _same_prime(u, v)
    return int(min(u.a, v.a, vp(u.b - v.b, p)))


def geodesic(u: LatticeClass, v: LatticeClass) -> list[LatticeClass]:
    m = meet_level(u, v)
    up = [ancestor(u, level) for level in range(u.a, m - 1, -1)]
    down = [ancestor(v, level) for level in range(m + 1, v.a + 1)]
    return up + down


def parent(vertex: LatticeClass) -> LatticeClass:
    return ancestor(vertex, vertex.a - 1)


def children(vertex: LatticeClass) -> list[LatticeClass]:
    p = vertex.prime
    step = Fraction(p) ** vertex.a
    return [LatticeClass(vertex.a + 1, vertex.b + c * step, p) for c in range(p)]


def neighbors(vertex: LatticeClass) -> list[LatticeClass]:
    return [parent(vertex)] + children(vertex)


def ball(center: LatticeClass, radius: int) -> list[LatticeClass]:
    if radius < 0:
        raise DomainError("nonnegative_radius", f"radius {radius} is negative")
    seen = {center: 0}
    queue = deque([center])
    while queue:
        vertex = queue.popleft()
        if seen[vertex] == radius:
            continue
        for w in neighbors(vertex):
            if w not in seen:
                seen[w] = seen[vertex] + 1
                queue.append(w)
    return sorted(seen)


def apartment_projection(vertex: LatticeClass) -> int:
    """s such that (s, 0) is the apartment vertex closest to the given one"""
    if vertex.b == 0:
        return vertex.a
    return int(vp(vertex.b, vertex.prime))


def edges(vertices: Iterable[LatticeClass]) -> Iterator[tuple[LatticeClass, LatticeClass]]:
    """Parent-child pairs inside a vertex set"""
    members = set(vertices)
    for v in sorted(members):
        up = parent(v)
        if up in members:
            yield up, v


def smith_distance(u: LatticeClass, v: LatticeClass) -> int:
    """distance() recomputed from the Smith normal form over Z of the change of basis"""
    p = _same_prime(u, v)
    change = matmul(inverse(u.basis), v.basis)
    common = math.lcm(*(x.denominator for row in change for x in row))
    snf = smith_normal_form(SymMatrix([[int(x * common) for x in row] for row in change]), domain=ZZ)
    first, second = (Fraction(abs(int(snf[i, i]))) for i in range(2))
    return abs(int(vp(second, p) - vp(first, p)))
