"""Characters, apartment points and diagonal torus elements of SL_n.

The diagonal torus T of SL_n has rank r = n - 1. Coordinates are taken on
t_1..t_{n-1} with t_n = (t_1...t_{n-1})^-1, so a character is an integer
vector of length r and the full weight eps_n reads (-1, ..., -1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from src.errors import DomainError
from src.padic.linalg import Matrix, diagonal
from src.padic.scalar import RationalLike, check_prime, format_rational, parse_rational, to_fraction, vp

Character = tuple[int, ...]
ApartmentPoint = tuple[Fraction, ...]


def character(exponents: Sequence[int]) -> Character:
    return tuple(int(e) for e in exponents)


def apartment_point(coordinates: Sequence[RationalLike]) -> ApartmentPoint:
    return tuple(to_fraction(c) for c in coordinates)


def zero_character(rank: int) -> Character:
    return (0,) * rank


def pairing(chi: Character, lam: ApartmentPoint) -> Fraction:
    """<chi, lambda>"""
    if len(chi) != len(lam):
        raise DomainError("rank_match", f"character of rank {len(chi)} paired with a point of rank {len(lam)}")
    return sum((c * x for c, x in zip(chi, lam)), Fraction(0))


def add_characters(a: Character, b: Character) -> Character:
    return tuple(x + y for x, y in zip(a, b))


def negate_character(a: Character) -> Character:
    return tuple(-x for x in a)


def diagonal_weight(exponents: Sequence[int]) -> Character:
    """Character of the monomial t_1^k_1 ... t_n^k_n restricted to T"""
    last = exponents[-1]
    return tuple(k - last for k in exponents[:-1])


def standard_weight(i: int, n: int) -> Character:
    """Weight eps_i of the i-th basis vector of the standard representation (0-based)"""
    return diagonal_weight([int(j == i) for j in range(n)])


def midpoint(lam0: ApartmentPoint, lam1: ApartmentPoint) -> ApartmentPoint:
    if len(lam0) != len(lam1):
        raise DomainError("rank_match", "apartment points of different ranks")
    return tuple((a + b) / 2 for a, b in zip(lam0, lam1))


def point_to_json(lam: ApartmentPoint) -> list[str]:
    return [format_rational(x) for x in lam]


def point_from_json(values: Sequence[RationalLike]) -> ApartmentPoint:
    return tuple(parse_rational(x) for x in values)


@dataclass(frozen=True)
class TorusElement:
    """diag(t_1, ..., t_n) in SL_n(Q)"""

    entries: tuple[Fraction, ...]
    prime: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        object.__setattr__(self, "entries", tuple(to_fraction(x) for x in self.entries))
        if any(x == 0 for x in self.entries):
            raise DomainError("nonzero_entries", "torus entries must be nonzero")
        product = Fraction(1)
        for x in self.entries:
            product *= x
        if product != 1:
            raise DomainError("unit_determinant", f"torus entries multiply to {product}, not 1")

    @classmethod
    def from_free_coordinates(cls, coordinates: Sequence[RationalLike], prime: int) -> "TorusElement":
        """Element with t_i given for i < n and t_n fixed by the determinant"""
        free = [to_fraction(x) for x in coordinates]
        product = Fraction(1)
        for x in free:
            product *= x
        return cls(tuple(free) + (1 / product,), prime)

    @classmethod
    def from_cocharacter(cls, exponents: Sequence[int], prime: int) -> "TorusElement":
        """p^lambda: the element whose free coordinates are p^e_i"""
        return cls.from_free_coordinates([Fraction(prime) ** e for e in exponents], prime)

    @classmethod
    def identity(cls, n: int, prime: int) -> "TorusElement":
        return cls(tuple(Fraction(1) for _ in range(n)), prime)

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def rank(self) -> int:
        return len(self.entries) - 1

    def character_value(self, chi: Character) -> Fraction:
        value = Fraction(1)
        for t, e in zip(self.entries, chi):
            value *= t**e
        return value

    def cocharacter(self) -> ApartmentPoint:
        """lambda(mu), characterized by <chi, lambda(mu)> = v_p(chi(mu))"""
        return tuple(Fraction(vp(t, self.prime)) for t in self.entries[:-1])

    def inverse(self) -> "TorusElement":
        return TorusElement(tuple(1 / t for t in self.entries), self.prime)

    def matrix(self) -> Matrix:
        return diagonal(self.entries)


def translate_action(lam: ApartmentPoint, mu: TorusElement) -> ApartmentPoint:
    """lambda - lambda(mu).

    Functions on T are translated by (mu.f)(t) = f(mu^-1 t); with that convention
    gauss_eval(mu.f, lam) = gauss_eval(f, translate_action(lam, mu)).
    """
    shift = mu.cocharacter()
    if len(shift) != len(lam):
        raise DomainError("rank_match", "torus element and apartment point have different ranks")
    return tuple(x - s for x, s in zip(lam, shift))
