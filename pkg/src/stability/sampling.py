"""Seeded random samples for the verification sweeps.

Every stream comes from ``worker_rng(seed, worker)``, so a sweep split over
workers draws the same samples for the same (seed, worker) pairs.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Iterable

import numpy as np

from src.errors import DomainError
from src.padic.linalg import Matrix, as_matrix, diagonal, matmul
from src.reynolds import CoeffModule
from src.tree import CompactGroupSpec, LatticeClass, MembershipResult, y_membership
from src.tropical import LaurentPolynomial

logger = logging.getLogger(__name__)

WEYL = as_matrix([[0, -1], [1, 0]])


def worker_rng(seed: int, worker: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, worker]))


def random_unit(rng: np.random.Generator, p: int) -> int:
    """A signed integer prime to p below p^2 in absolute value"""
    while True:
        u = int(rng.integers(1, p * p))
        if u % p:
            return u if rng.random() < 0.5 else -u


def random_scalar(rng: np.random.Generator, p: int, low: int, high: int) -> Fraction:
    """u p^e with a random unit u and e uniform in [low, high]"""
    e = int(rng.integers(low, high + 1))
    return random_unit(rng, p) * Fraction(p) ** e


def random_vector(rng: np.random.Generator, m: int, p: int, low: int, high: int, zero_rate: float = 0.25) -> tuple[Fraction, ...]:
    """Random vector with at least one nonzero entry"""
    entries = [Fraction(0) if rng.random() < zero_rate else random_scalar(rng, p, low, high) for _ in range(m)]
    if all(x == 0 for x in entries):
        entries[int(rng.integers(0, m))] = random_scalar(rng, p, low, high)
    return tuple(entries)


def random_integral_element(rng: np.random.Generator, p: int, length: int = 3) -> Matrix:
    """Product of integral elementary matrices, sometimes times the Weyl element"""
    k = as_matrix([[1, 0], [0, 1]])
    for step in range(length):
        t = int(rng.integers(0, p * p))
        e = as_matrix([[1, t], [0, 1]]) if step % 2 == 0 else as_matrix([[1, 0], [t, 1]])
        k = matmul(k, e)
    if rng.random() < 0.5:
        k = matmul(k, WEYL)
    return k


def translation(j: int, p: int, unit: int = 1) -> Matrix:
    """diag(u p^j, u^-1 p^-j)"""
    t = unit * Fraction(p) ** j
    return diagonal([t, 1 / t])


def random_translation(rng: np.random.Generator, p: int, low: int, high: int) -> Matrix:
    return translation(int(rng.integers(low, high + 1)), p)


def random_group_element(rng: np.random.Generator, p: int, low: int, high: int) -> Matrix:
    """An element of SL_2(Q) whose free entries a, b, c carry valuations in [low, high]"""
    a = random_scalar(rng, p, low, high)
    b = random_scalar(rng, p, low, high)
    c = random_scalar(rng, p, low, high)
    return ((a, b), (c, (1 + b * c) / a))


def sample_y(
    rng: np.random.Generator,
    window: Iterable[LatticeClass],
    H: CompactGroupSpec,
    exponents: tuple[int, int] = (-1, 1),
    attempts: int = 200,
) -> tuple[Matrix, MembershipResult]:
    """k1 t1 k2 t2 with integral k and apartment translations t, kept once it lies in Y"""
    window = list(window)
    p = H.prime
    low, high = exponents
    for _ in range(attempts):
        y = random_integral_element(rng, p)
        for _ in range(2):
            y = matmul(y, random_translation(rng, p, low, high))
            y = matmul(y, random_integral_element(rng, p))
        membership = y_membership(y, window, H)
        if membership.member:
            return y, membership
    raise DomainError("sampling_budget", f"no element of Y found in {attempts} attempts")


def random_coefficient_function(
    rng: np.random.Generator, C: CoeffModule, low: int, high: int
) -> LaurentPolynomial:
    """Random nonzero member of C_H(Ad_rho) in the character basis"""
    p = C.spec.prime
    coefficients = random_vector(rng, len(C.characters), p, low, high)
    return LaurentPolynomial(tuple(zip(C.characters, coefficients)), C.spec.rank, p)


def random_laurent(
    rng: np.random.Generator, rank: int, p: int, terms: int = 3, bound: int = 3, low: int = -3, high: int = 3
) -> LaurentPolynomial:
    mapping = {}
    for _ in range(terms):
        chi = tuple(int(x) for x in rng.integers(-bound, bound + 1, size=rank))
        mapping[chi] = random_scalar(rng, p, low, high)
    return LaurentPolynomial.from_mapping(mapping, rank, p)


def random_apartment_point(rng: np.random.Generator, rank: int, denominator: int = 4, bound: int = 8) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(x), denominator) for x in rng.integers(-bound, bound + 1, size=rank))
