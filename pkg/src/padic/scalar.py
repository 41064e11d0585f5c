"""Exact rationals carrying a p-adic valuation.

Every absolute value in the package is handled through its valuation
v_p(x), with |x| = p^(-v_p(x)). Valuations are exact rationals (Fraction or
int) and the zero scalar has valuation +inf (``math.inf``).
"""

from __future__ import annotations

import math
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Annotated, Iterator, Union

from pydantic import PlainSerializer, PlainValidator
from sympy import isprime, multiplicity

from src.errors import BitLengthError, DomainError

INFINITY = math.inf

Valuation = Union[Fraction, int, float]
RationalLike = Union[Fraction, int, str]

_bit_length_cap: ContextVar[int | None] = ContextVar("bit_length_cap", default=None)


@contextmanager
def bit_length_cap(cap: int | None) -> Iterator[None]:
    """Bound the bit length of numerators and denominators built inside the block"""
    token = _bit_length_cap.set(cap)
    try:
        yield
    finally:
        _bit_length_cap.reset(token)


def check_bits(value: Fraction) -> None:
    cap = _bit_length_cap.get()
    if cap is None:
        return
    bits = max(value.numerator.bit_length(), value.denominator.bit_length())
    if bits > cap:
        raise BitLengthError(f"{bits}-bit rational exceeds the configured cap of {cap} bits")


@lru_cache(maxsize=128)
def check_prime(p: int) -> int:
    """Return ``p`` unchanged if it is a prime number, raise DomainError otherwise"""
    if isinstance(p, bool) or not isinstance(p, int) or not isprime(p):
        raise DomainError("prime", f"{p!r} is not a prime number")
    return p


@dataclass(frozen=True, slots=True)
class Prime:
    p: int

    def __post_init__(self) -> None:
        check_prime(self.p)

    def __int__(self) -> int:
        return self.p


def to_fraction(x: RationalLike | "PadicScalar") -> Fraction:
    if isinstance(x, PadicScalar):
        return x.value
    if isinstance(x, float):
        raise DomainError("exact_input", f"floating point value {x!r} is not accepted")
    return Fraction(x)


def vp(x: RationalLike, p: int) -> Valuation:
    """p-adic valuation of a rational number.

    Examples:
        >>> vp(12, 2)
        2
        >>> vp(Fraction(3, 4), 2)
        -2
        >>> vp(0, 5)
        inf
    """
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))


def p_power(exponent: int, p: int) -> Fraction:
    return Fraction(p) ** exponent


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: RationalLike) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise DomainError("rational_syntax", f"cannot read {text!r} as a rational: {e}")


def format_valuation(v: Valuation) -> str:
    return "inf" if v == INFINITY else format_rational(Fraction(v))


def parse_valuation(text: str) -> Valuation:
    return INFINITY if text in ("inf", "+inf") else parse_rational(text)


def as_valuation(x: object) -> Valuation:
    """Coerce a field value to an exact valuation, keeping +inf as ``math.inf``"""
    if isinstance(x, float):
        if math.isinf(x):
            if x < 0:
                raise DomainError("valuation_syntax", "valuations are never -inf")
            return INFINITY
        return Fraction(x)
    if isinstance(x, (Fraction, int)):
        return Fraction(x)
    return parse_valuation(str(x))


# pydantic field type for exact rationals: accepts Fraction, int or "num/den",
# serializes to "num/den" in JSON mode
ExactRational = Annotated[
    Fraction,
    PlainValidator(lambda x: x if isinstance(x, Fraction) else parse_rational(x)),
    PlainSerializer(format_rational, return_type=str, when_used="json"),
]

# valuations may be +inf; JSON form "num/den" or "inf"
ExactValuation = Annotated[
    Union[Fraction, float],
    PlainValidator(as_valuation),
    PlainSerializer(format_valuation, return_type=str, when_used="json"),
]


@dataclass(frozen=True, slots=True)
class PadicScalar:
    """An element of Q viewed inside Q_p"""

    value: Fraction
    prime: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", to_fraction(self.value))
        check_prime(self.prime)
        check_bits(self.value)

    @classmethod
    def of(cls, numerator: int, denominator: int, prime: int) -> "PadicScalar":
        if denominator == 0:
            raise DomainError("nonzero_denominator", "denominator must be nonzero")
        return cls(Fraction(numerator, denominator), prime)

    @classmethod
    def from_json(cls, text: str, prime: int) -> "PadicScalar":
        return cls(parse_rational(text), prime)

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def is_zero(self) -> bool:
        return self.value == 0

    def valuation(self) -> Valuation:
        return vp(self.value, self.prime)

    def _coerce(self, other: "PadicScalar | RationalLike") -> Fraction:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise DomainError(
                    "same_prime", f"cannot combine a {self.prime}-adic and a {other.prime}-adic scalar"
                )
            return other.value
        return to_fraction(other)

    def __add__(self, other: "PadicScalar | RationalLike") -> "PadicScalar":
        return PadicScalar(self.value + self._coerce(other), self.prime)

    __radd__ = __add__

    def __sub__(self, other: "PadicScalar | RationalLike") -> "PadicScalar":
        return PadicScalar(self.value - self._coerce(other), self.prime)

    def __rsub__(self, other: "PadicScalar | RationalLike") -> "PadicScalar":
        return PadicScalar(self._coerce(other) - self.value, self.prime)

    def __mul__(self, other: "PadicScalar | RationalLike") -> "PadicScalar":
        return PadicScalar(self.value * self._coerce(other), self.prime)

    __rmul__ = __mul__

    def __neg__(self) -> "PadicScalar":
        return PadicScalar(-self.value, self.prime)

    def inverse(self) -> "PadicScalar":
        if self.value == 0:
            raise DomainError("nonzero_divisor", "the zero scalar has no inverse")
        return PadicScalar(1 / self.value, self.prime)

    def __truediv__(self, other: "PadicScalar | RationalLike") -> "PadicScalar":
        divisor = self._coerce(other)
        if divisor == 0:
            raise DomainError("nonzero_divisor", "division by zero")
        return PadicScalar(self.value / divisor, self.prime)

    def to_json(self) -> str:
        return format_rational(self.value)

    def __str__(self) -> str:
        return self.to_json()


def valuation(x: PadicScalar) -> Valuation:
    """v_p(numerator) - v_p(denominator), +inf for zero"""
    return x.valuation()


def abs_log(x: PadicScalar) -> Valuation:
    """Valuation form of |x|; |x| = p^(-abs_log(x))"""
    return x.valuation()


def add(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x + y


def mul(x: PadicScalar, y: PadicScalar) -> PadicScalar:
    return x * y


def inv(x: PadicScalar) -> PadicScalar:
    return x.inverse()
