"""Sampled checks of every step of the inequality chain behind the constants.

Each check draws its own samples from a dedicated random stream and compares
exact valuations; a check passes when no sample fails.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from src.config.settings import HarnessConfig
from src.padic.linalg import as_vector, inverse, matmul, matvec
from src.padic.scalar import INFINITY, bit_length_cap, format_valuation, vp
from src.reynolds import coefficient_function, coefficient_module, generating_family, project_k, reynolds_identity_check, rho
from src.reynolds.weights import project_z, weight_decompose
from src.stability.constants import StabilityConstants, projected_coordinate_functions
from src.stability.sampling import (
    random_coefficient_function,
    random_group_element,
    random_integral_element,
    random_scalar,
    random_vector,
    sample_y,
    worker_rng,
)
from src.tree import CompactGroupSpec, act, coset_representatives, standard_vertex
from src.tropical import MatrixFunction, right_translate, vertex_seminorm
from src.ultranorm import dual_ball_exponents, dual_ball_sup, norm_eval

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainResult:
    name: str
    samples: int
    failures: int
    worst_margin: Fraction | float | None = None

    @property
    def holds(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "holds": self.holds,
            "worst_margin": None if self.worst_margin is None else format_valuation(self.worst_margin),
        }


class _Tally:
    """Counts failures and keeps the smallest margin rhs - lhs"""

    def __init__(self, name: str):
        self.name = name
        self.samples = 0
        self.failures = 0
        self.worst = None

    def record(self, lhs, rhs) -> None:
        self.samples += 1
        if lhs > rhs:
            self.failures += 1
        if lhs != INFINITY:
            margin = rhs - lhs
            self.worst = margin if self.worst is None else min(self.worst, margin)

    def flag(self, ok: bool) -> None:
        self.samples += 1
        self.failures += 0 if ok else 1

    def result(self) -> ChainResult:
        if self.failures:
            logger.error("chain check %s failed on %d of %d samples", self.name, self.failures, self.samples)
        return ChainResult(self.name, self.samples, self.failures, self.worst)


def _vector_range(config: HarnessConfig) -> tuple[int, int]:
    return config.vector_valuations.low, config.vector_valuations.high


def _y_exponents(config: HarnessConfig) -> tuple[int, int]:
    return config.translation_exponents.low, config.translation_exponents.high


def operator_norm_bound(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """min_omega val rho(g omega) v <= min_omega val rho(omega^-1 g omega) v - c2_log"""
    spec, N, omega = config.rep_spec(), config.norm(), config.omega_set()
    tally = _Tally("operator_norm_bound")
    for _ in range(samples):
        g = random_group_element(rng, spec.prime, config.group_valuations.low, config.group_valuations.high)
        v = random_vector(rng, spec.dimension, spec.prime, *_vector_range(config))
        lhs = min(norm_eval(N, matvec(rho(spec, matmul(g, w)), v)) for w in omega.matrices())
        rhs = min(norm_eval(N, matvec(rho(spec, matmul(inverse(w), matmul(g, w))), v)) for w in omega.matrices())
        tally.record(lhs, rhs - constants.c2_log)
    return tally.result()


def constant_projection(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """min_omega v_p f(omega) <= v_p(pi_k f) + c1_log on random f in C_H(Ad_rho)"""
    spec, omega = config.rep_spec(), config.omega_set()
    C = coefficient_module(spec)
    tally = _Tally("constant_projection")
    for _ in range(samples):
        f = random_coefficient_function(rng, C, *_vector_range(config))
        lhs = min(vp(f.evaluate(w), spec.prime) for w in omega)
        tally.record(lhs, vp(project_k(C, f), spec.prime) + constants.c1_log)
    return tally.result()


def _random_functional(rng: np.random.Generator, config: HarnessConfig) -> tuple[Fraction, ...]:
    spec = config.rep_spec()
    return random_vector(rng, spec.dimension, spec.prime, *_vector_range(config))


def conjugated_projection(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """The constant_projection bound on omega -> phi(rho(omega^-1 k y omega) v)"""
    spec, omega = config.rep_spec(), config.omega_set()
    window, H = config.window(), config.torus()
    C = coefficient_module(spec)
    tally = _Tally("conjugated_projection")
    for _ in range(samples):
        y, _ = sample_y(rng, window, H, _y_exponents(config))
        ky = matmul(random_integral_element(rng, spec.prime), y)
        f = coefficient_function(spec, ky, _random_functional(rng, config), _random_functional(rng, config))
        lhs = min(vp(f.evaluate(w), spec.prime) for w in omega)
        tally.record(lhs, vp(project_k(C, f), spec.prime) + constants.c1_log)
    return tally.result()


def reynolds_step(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """pi_k of the conjugation coefficient equals phi(pi_z(rho(y)) v), exactly"""
    spec = config.rep_spec()
    W, C = weight_decompose(spec), coefficient_module(spec)
    tally = _Tally("reynolds_step")
    for _ in range(samples):
        y = random_group_element(rng, spec.prime, config.group_valuations.low, config.group_valuations.high)
        holds = reynolds_identity_check(spec, y, _random_functional(rng, config), _random_functional(rng, config), W, C)
        tally.flag(holds)
    return tally.result()


def _random_family_member(rng: np.random.Generator, family: list[MatrixFunction], config: HarnessConfig) -> MatrixFunction:
    p = config.prime
    F = MatrixFunction.constant(0, family[0].n, p)
    for member in family:
        if rng.random() < 0.3:
            F = F + member.scale(random_scalar(rng, p, *_vector_range(config)))
    if F.is_zero():
        F = family[int(rng.integers(0, len(family)))]
    return F


def compact_sup(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """min_k v_p F(k y) <= (Gauss valuation of F(. y) at o) + c3_log over the enumerated SL_2(Z_p)"""
    spec = config.rep_spec()
    window, H = config.window(), config.torus()
    family = generating_family(spec)
    ks = list(coset_representatives(CompactGroupSpec.sl2(spec.prime), constants.c3_level, config.enumeration_budget))
    tally = _Tally("compact_sup")
    for _ in range(samples):
        y, _ = sample_y(rng, window, H, _y_exponents(config))
        G = right_translate(_random_family_member(rng, family, config), y)
        lhs = min(vp(G.evaluate(k), spec.prime) for k in ks)
        tally.record(lhs, vertex_seminorm(G, 0, 0) + constants.c3_log)
    return tally.result()


def combined(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """min over k and omega of the dual-ball sup of rho(omega^-1 k y omega) v, bounded by c1 c3 and
    the Gauss valuations at o of x -> (pi_z(rho(x y)) v)_a.

    The left side is taken at the k minimizing the projected side, which bounds the
    minimum over all k from above.
    """
    spec, N, omega = config.rep_spec(), config.norm(), config.omega_set()
    window, H = config.window(), config.torus()
    W = weight_decompose(spec)
    ceilings = dual_ball_exponents(N)
    ks = list(coset_representatives(CompactGroupSpec.sl2(spec.prime), constants.c3_level, config.enumeration_budget))
    tally = _Tally("combined")
    for _ in range(samples):
        y, _ = sample_y(rng, window, H, _y_exponents(config))
        v = as_vector(random_vector(rng, spec.dimension, spec.prime, *_vector_range(config)))
        k_best = min(ks, key=lambda k: dual_ball_sup(N, matvec(project_z(W, rho(spec, matmul(k, y))), v)))
        ky = matmul(k_best, y)
        lhs = min(dual_ball_sup(N, matvec(rho(spec, matmul(inverse(w), matmul(ky, w))), v)) for w in omega.matrices())
        F = projected_coordinate_functions(spec, v)
        bound = min(vertex_seminorm(right_translate(F_a, y), 0, 0) + ceilings[a] for a, F_a in enumerate(F))
        tally.record(lhs, bound + constants.c1_log + constants.c3_log)
    return tally.result()


def window_bound(config: HarnessConfig, constants: StabilityConstants, rng: np.random.Generator, samples: int) -> ChainResult:
    """For y in Y the seminorm valuation of each F_a at y^-1 o is at most its largest value on C"""
    spec = config.rep_spec()
    window, H = config.window(), config.torus()
    tally = _Tally("window_bound")
    for _ in range(samples):
        y, _ = sample_y(rng, window, H, _y_exponents(config))
        x = act(inverse(y), standard_vertex(spec.prime))
        v = random_vector(rng, spec.dimension, spec.prime, *_vector_range(config))
        for F_a in projected_coordinate_functions(spec, v):
            if F_a.is_zero():
                continue
            rhs = max(vertex_seminorm(F_a, gamma.a, gamma.b) for gamma in window)
            tally.record(vertex_seminorm(F_a, x.a, x.b), rhs)
    return tally.result()


CHAIN_CHECKS: dict[str, Callable[..., ChainResult]] = {
    "operator_norm_bound": operator_norm_bound,
    "constant_projection": constant_projection,
    "conjugated_projection": conjugated_projection,
    "reynolds_step": reynolds_step,
    "compact_sup": compact_sup,
    "combined": combined,
    "window_bound": window_bound,
}


def run_chain(config: HarnessConfig, constants: StabilityConstants, samples: int | None = None) -> list[ChainResult]:
    """Every chain check on its own stream, derived from the seed and the check's position"""
    samples = samples or config.chain_samples
    results = []
    with bit_length_cap(config.bit_length_cap):
        for index, (name, check) in enumerate(CHAIN_CHECKS.items(), start=1):
            rng = worker_rng(config.seed, 1000 + index)
            results.append(check(config, constants, rng, samples))
            logger.info("chain check %s: %d failures over %d samples", name, results[-1].failures, samples)
    return results
