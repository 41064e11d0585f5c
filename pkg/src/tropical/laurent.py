"""Laurent polynomials on a split torus, their Gauss seminorms and tropicalization.

For f = sum a_chi chi and an apartment point lambda, the Gauss seminorm is
max_chi |a_chi| |p|^<chi, lambda>. It is handled through its valuation
min_chi (v_p(a_chi) + <chi, lambda>).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from src.errors import DomainError
from src.padic.scalar import (
    INFINITY,
    PadicScalar,
    RationalLike,
    Valuation,
    check_prime,
    format_rational,
    format_valuation,
    parse_rational,
    to_fraction,
    vp,
)
from src.tropical.characters import (
    ApartmentPoint,
    Character,
    TorusElement,
    add_characters,
    midpoint,
    pairing,
    zero_character,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LaurentPolynomial:
    terms: tuple[tuple[Character, Fraction], ...]
    rank: int
    prime: int

    def __post_init__(self) -> None:
        check_prime(self.prime)
        merged: dict[Character, Fraction] = {}
        for chi, a in self.terms:
            chi = tuple(int(e) for e in chi)
            if len(chi) != self.rank:
                raise DomainError("rank_match", f"character {chi} in a rank {self.rank} polynomial")
            merged[chi] = merged.get(chi, Fraction(0)) + to_fraction(a)
        object.__setattr__(self, "terms", tuple(sorted((c, a) for c, a in merged.items() if a != 0)))

    @classmethod
    def from_mapping(cls, mapping: Mapping[Character, RationalLike | PadicScalar], rank: int, prime: int) -> "LaurentPolynomial":
        return cls(tuple((chi, to_fraction(a)) for chi, a in mapping.items()), rank, prime)

    @classmethod
    def zero(cls, rank: int, prime: int) -> "LaurentPolynomial":
        return cls((), rank, prime)

    @classmethod
    def constant(cls, a: RationalLike, rank: int, prime: int) -> "LaurentPolynomial":
        return cls(((zero_character(rank), to_fraction(a)),), rank, prime)

    @classmethod
    def monomial(cls, chi: Sequence[int], a: RationalLike, prime: int) -> "LaurentPolynomial":
        return cls(((tuple(chi), to_fraction(a)),), len(chi), prime)

    @classmethod
    def from_json(cls, record: dict) -> "LaurentPolynomial":
        rank = int(record["rank"])
        terms = tuple((tuple(t["character"]), parse_rational(t["coefficient"])) for t in record["terms"])
        return cls(terms, rank, int(record["p"]))

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "p": self.prime,
            "terms": [{"character": list(chi), "coefficient": format_rational(a)} for chi, a in self.terms],
        }

    def as_dict(self) -> dict[Character, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def characters(self) -> tuple[Character, ...]:
        return tuple(chi for chi, _ in self.terms)

    def coefficient(self, chi: Sequence[int]) -> Fraction:
        return self.as_dict().get(tuple(chi), Fraction(0))

    def _check_compatible(self, other: "LaurentPolynomial") -> None:
        if other.prime != self.prime:
            raise DomainError("same_prime", "Laurent polynomials over different primes")
        if other.rank != self.rank:
            raise DomainError("rank_match", "Laurent polynomials on tori of different ranks")

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_compatible(other)
        return LaurentPolynomial(self.terms + other.terms, self.rank, self.prime)

    def __neg__(self) -> "LaurentPolynomial":
        return self.scale(-1)

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        self._check_compatible(other)
        terms = [(add_characters(c1, c2), a1 * a2) for c1, a1 in self.terms for c2, a2 in other.terms]
        return LaurentPolynomial(tuple(terms), self.rank, self.prime)

    def scale(self, c: RationalLike) -> "LaurentPolynomial":
        c = to_fraction(c)
        return LaurentPolynomial(tuple((chi, c * a) for chi, a in self.terms), self.rank, self.prime)

    def evaluate(self, mu: TorusElement) -> Fraction:
        if mu.rank != self.rank:
            raise DomainError("rank_match", "torus element of the wrong rank")
        return sum((a * mu.character_value(chi) for chi, a in self.terms), Fraction(0))

    def translate(self, mu: TorusElement) -> "LaurentPolynomial":
        """t -> f(mu^-1 t)"""
        return LaurentPolynomial(
            tuple((chi, a / mu.character_value(chi)) for chi, a in self.terms), self.rank, self.prime
        )


def gauss_eval(f: LaurentPolynomial, lam: ApartmentPoint) -> Valuation:
    """Valuation of the Gauss seminorm of f at lambda; +inf for f = 0"""
    if len(lam) != f.rank:
        raise DomainError("rank_match", f"point of rank {len(lam)} for a rank {f.rank} polynomial")
    return min((vp(a, f.prime) + pairing(chi, lam) for chi, a in f.terms), default=INFINITY)


@dataclass(frozen=True)
class MaxAffineFunction:
    """lambda -> min over pieces of (offset + <slope, lambda>), a valuation.

    Offsets are v_p(a_chi) and slopes are the characters chi; in log-absolute-value
    terms this is the maximum of the affine functions -offset - <slope, lambda>.
    """

    pieces: tuple[tuple[Fraction, Character], ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise DomainError("nonempty_pieces", "a max-affine function needs at least one piece")

    @property
    def rank(self) -> int:
        return len(self.pieces[0][1])

    def value(self, lam: ApartmentPoint) -> Fraction:
        return min(offset + pairing(slope, lam) for offset, slope in self.pieces)

    def active_pieces(self, lam: ApartmentPoint) -> tuple[int, ...]:
        """Indices of the pieces attaining the minimum at lam"""
        best = self.value(lam)
        return tuple(i for i, (offset, slope) in enumerate(self.pieces) if offset + pairing(slope, lam) == best)

    def breakpoints(self) -> tuple[Fraction, ...]:
        """Points of a rank-1 function where the active piece changes"""
        if self.rank != 1:
            raise DomainError("rank_one", "breakpoints are only defined in rank 1")
        candidates = set()
        for i, (o1, (s1,)) in enumerate(self.pieces):
            for o2, (s2,) in self.pieces[i + 1 :]:
                if s1 != s2:
                    candidates.add(Fraction(o2 - o1, s1 - s2))
        return tuple(
            x for x in sorted(candidates) if len({self.pieces[i][1] for i in self.active_pieces((x,))}) > 1
        )

    def sample_grid(self, lower: Fraction, upper: Fraction, steps: int) -> list[dict[str, str]]:
        """Rows {lambda, valuation} on an evenly spaced rank-1 grid, for CSV export"""
        if self.rank != 1:
            raise DomainError("rank_one", "sample grids are only produced in rank 1")
        if steps < 1 or upper < lower:
            raise DomainError("grid_bounds", "need upper >= lower and at least one step")
        width = (upper - lower) / steps
        rows = []
        for k in range(steps + 1):
            x = lower + k * width
            rows.append({"lambda": format_rational(x), "valuation": format_valuation(self.value((x,)))})
        return rows

    def to_json(self) -> dict:
        return {"pieces": [{"offset": format_rational(o), "slope": list(s)} for o, s in self.pieces]}


def tropicalize(f: LaurentPolynomial) -> MaxAffineFunction:
    if f.is_zero():
        raise DomainError("nonzero_polynomial", "the zero polynomial has no tropicalization")
    return MaxAffineFunction(tuple((Fraction(vp(a, f.prime)), chi) for chi, a in f.terms))


def check_midpoint_convexity(f: LaurentPolynomial, lam0: ApartmentPoint, lam1: ApartmentPoint) -> bool:
    """gauss_eval at the midpoint is at least the mean of the endpoint values.

    In valuations this is concavity; for |f| it is log-convexity along the segment.
    """
    if f.is_zero():
        raise DomainError("nonzero_polynomial", "convexity is tested on nonzero polynomials")
    mid = gauss_eval(f, midpoint(lam0, lam1))
    holds = 2 * mid >= gauss_eval(f, lam0) + gauss_eval(f, lam1)
    if not holds:
        logger.error("midpoint convexity failed for %s on [%s, %s]", f.to_json(), lam0, lam1)
    return holds

