"""Effective constants c1..c4 and the candidate stability constants built from them.

All constants are stored as base-p logarithms: c = p^(c_log). The target
inequality sup_omega ||rho(y omega) v|| >= ||v|| / c then reads, in
valuations, min_omega val(rho(y omega) v) <= val(v) + c_log.
"""

from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Iterable

from pydantic import BaseModel, ConfigDict, Field

from src.errors import DomainError
from src.padic.linalg import ZpRowLattice, independent_rows, inverse, min_valuation
from src.padic.scalar import INFINITY, ExactRational, Valuation, vp
from src.reynolds import CoeffModule, OmegaSet, RepSpec, check_star, coefficient_module, evaluation_matrix, generating_family, rho
from src.reynolds.representations import rho_weights, symbolic_rho
from src.tree import CompactGroupSpec, LatticeClass, coset_representatives
from src.tropical import MatrixFunction, gauss_eval, translated_torus_restriction
from src.ultranorm import DiagonalUltraNorm, dual_ball_exponents, norm_eval, operator_norm

logger = logging.getLogger(__name__)


def _require_sl2(spec: RepSpec) -> None:
    if spec.n != 2:
        raise DomainError("rank_two", "the tree-based constants are implemented for SL_2 only")


class C1Result(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c1_log: ExactRational = Field(description="log_p of the exact operator norm of pi_k for the Omega_b sup norm")
    additive: ExactRational = Field(description="1 + |||pi_k|||, the form that also covers pi_k = 0")
    basis_indices: list[int]


def compute_c1(omega: OmegaSet, C: CoeffModule) -> C1Result:
    """|||pi_k||| from a square evaluation matrix on a row basis Omega_b of Omega"""
    star = check_star(omega, C)
    if not star.holds:
        raise DomainError("star_condition", f"evaluations at Omega have rank {star.rank} < dim C = {star.dimension}")
    rows = evaluation_matrix(omega, C)
    M_b = tuple(rows[i] for i in star.basis_indices)
    zero = C.characters.index((0,) * C.spec.rank)
    # pi_k(f) = sum_omega r_omega f(omega) over Omega_b
    r = inverse(M_b)[zero]
    c1_log = Fraction(-min_valuation(r, omega.prime))
    additive = 1 + Fraction(omega.prime) ** int(c1_log)
    return C1Result(c1_log=c1_log, additive=additive, basis_indices=list(star.basis_indices))


def compute_c2(omega: OmegaSet, spec: RepSpec, N: DiagonalUltraNorm) -> Fraction:
    """log_p of min over omega of |||rho(omega)|||^-1.

    The minimum runs over Omega and its inverses, since the conjugation step applies
    rho(omega^-1) as well. For SL_2 tori the weights are symmetric under negation and
    both ranges give the same value.
    """
    if len(omega) == 0:
        raise DomainError("nonempty_omega", "Omega must contain at least one element")
    best: Valuation = INFINITY
    for w in omega:
        for g in (w.matrix(), w.inverse().matrix()):
            best = min(best, operator_norm(N, N, rho(spec, g)))
    return Fraction(best)


class C3Result(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c3_log: ExactRational = Field(description="log_p of the comparability constant on the span of the family")
    family_ratio_log: ExactRational = Field(description="Largest per-function ratio over the chosen basis")
    level: int
    points: int
    span_dimension: int


def gauss_at_o(F: MatrixFunction) -> Valuation:
    """Valuation of the stabilizer Gauss norm at o: min v_p over the normal form coefficients"""
    return min((vp(c, F.prime) for _, c in F.normal_form().terms), default=INFINITY)


def compute_c3(spec: RepSpec, level: int, budget: int | None = None) -> C3Result:
    """Exact comparability of the Gauss norm at o with the sup over SL_2(Z/p^level) lifts.

    Functions f = sum x_i F_i of the span have Gauss norm max_mu |l_mu(x)|, one
    linear form per normal-form monomial, and sup norm max_k |sum x_i F_i(k)|.
    The worst ratio for l_mu is p^(-s) with l_mu in p^s times the Z_(p)-row
    lattice of the evaluations.
    """
    _require_sl2(spec)
    p = spec.prime
    family = generating_family(spec)
    monomials = sorted({m for f in family for m, _ in f.terms})
    coefficients = [[dict(f.terms).get(m, Fraction(0)) for m in monomials] for f in family]
    chosen = independent_rows(coefficients)
    basis = [family[i] for i in chosen]
    lattice = ZpRowLattice(len(basis), p)
    sup_valuations = [INFINITY] * len(basis)
    points = 0
    for k in coset_representatives(CompactGroupSpec.sl2(p), level, budget):
        values = [F.evaluate(k) for F in basis]
        lattice.insert(values)
        sup_valuations = [min(s, vp(x, p)) for s, x in zip(sup_valuations, values)]
        points += 1
    c3_log = Fraction(-10**9)
    for j, monomial in enumerate(monomials):
        functional = [coefficients[i][j] for i in chosen]
        if all(x == 0 for x in functional):
            continue
        s = lattice.dual_valuation(functional)
        if s is None:
            raise DomainError("level_too_low", f"evaluations at level {level} do not separate the span of the family")
        c3_log = max(c3_log, Fraction(-s))
    ratio = max(Fraction(s - gauss_at_o(F)) for s, F in zip(sup_valuations, basis))
    logger.info("c3 at level %d from %d points over a span of dimension %d", level, points, len(basis))
    return C3Result(c3_log=c3_log, family_ratio_log=ratio, level=level, points=points, span_dimension=len(basis))


def projected_coordinate_functions(spec: RepSpec, v: Iterable[Fraction]) -> list[MatrixFunction]:
    """F_a(x) = (pi_z(rho(x)) v)_a = sum over b of the weight of a of rho(x)_ab v_b"""
    v = list(v)
    weights = rho_weights(spec)
    r = symbolic_rho(spec)
    functions = []
    for a in range(spec.dimension):
        F = MatrixFunction.constant(0, spec.n, spec.prime)
        for b in range(spec.dimension):
            if weights[b] == weights[a] and v[b] != 0:
                F = F + r[a][b].scale(v[b])
        functions.append(F)
    return functions


def certifying_vectors(m: int) -> list[tuple[Fraction, ...]]:
    """Standard basis vectors and all sums of two of them"""
    basis = [tuple(Fraction(int(i == j)) for j in range(m)) for i in range(m)]
    sums = [tuple(x + y for x, y in zip(basis[i], basis[j])) for i in range(m) for j in range(i + 1, m)]
    return basis + sums


def window_value(spec: RepSpec, N: DiagonalUltraNorm, gamma: LatticeClass, v: Iterable[Fraction]) -> Valuation:
    """Valuation of sup over the dual unit ball of the projected coefficients of v at gamma"""
    n_b = ((Fraction(1), gamma.b), (Fraction(0), Fraction(1)))
    point = (Fraction(gamma.a, 2),)
    ceilings = dual_ball_exponents(N)
    return min(
        gauss_eval(translated_torus_restriction(F, n_b), point) + ceilings[a]
        for a, F in enumerate(projected_coordinate_functions(spec, v))
    )


class C4Result(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c4_log: ExactRational
    window_size: int
    vectors: int


def compute_c4(window: Iterable[LatticeClass], spec: RepSpec, N: DiagonalUltraNorm) -> C4Result:
    _require_sl2(spec)
    window = list(window)
    if not window:
        raise DomainError("nonempty_window", "the window C is empty")
    vectors = certifying_vectors(spec.dimension)
    worst = Fraction(-10**9)
    for gamma in window:
        for v in vectors:
            S = window_value(spec, N, gamma, v)
            if S == INFINITY:
                raise DomainError("window_degenerate", f"projected coefficients of {v} vanish at {gamma}")
            worst = max(worst, Fraction(S - norm_eval(N, v)))
    return C4Result(c4_log=worst, window_size=len(window), vectors=len(vectors))


class StabilityConstants(BaseModel):
    """c1..c4 with the candidate assemblies, all as base-p logarithms"""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    prime: int
    rep: dict
    c1_log: ExactRational
    c1_additive: ExactRational
    c2_log: ExactRational
    c3_log: ExactRational
    c3_family_ratio_log: ExactRational
    c3_level: int
    c4_log: ExactRational
    omega_basis: list[int]
    window_size: int

    def candidates(self) -> dict[str, Fraction]:
        c_a = self.c1_log + self.c2_log + self.c3_log - self.c4_log
        traced = self.c1_log + self.c3_log + self.c4_log - self.c2_log
        return {
            "c_A": c_a,
            "c_B": -c_a,
            "c_traced": traced,
            "c_safe": max(Fraction(0), c_a, -c_a, traced),
        }

    @property
    def c_safe(self) -> Fraction:
        return self.candidates()["c_safe"]

    def to_json(self) -> dict:
        record = self.model_dump(mode="json")
        record["candidates"] = {name: f"{c.numerator}/{c.denominator}" for name, c in self.candidates().items()}
        return record


def compute_constants(
    spec: RepSpec,
    omega: OmegaSet,
    N: DiagonalUltraNorm,
    window: Iterable[LatticeClass],
    level: int,
    budget: int | None = None,
) -> StabilityConstants:
    window = list(window)
    C = coefficient_module(spec)
    c1 = compute_c1(omega, C)
    c2 = compute_c2(omega, spec, N)
    c3 = compute_c3(spec, level, budget)
    c4 = compute_c4(window, spec, N)
    constants = StabilityConstants(
        prime=spec.prime,
        rep=spec.to_json(),
        c1_log=c1.c1_log,
        c1_additive=c1.additive,
        c2_log=c2,
        c3_log=c3.c3_log,
        c3_family_ratio_log=c3.family_ratio_log,
        c3_level=level,
        c4_log=c4.c4_log,
        omega_basis=c1.basis_indices,
        window_size=len(window),
    )
    logger.info("constants %s", {k: str(v) for k, v in constants.candidates().items()})
    return constants


def log_to_real(c_log: Fraction, p: int) -> float:
    """p^(c_log) for display only"""
    return math.pow(p, float(c_log))
