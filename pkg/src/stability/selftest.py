"""The full invariant suite behind ``ultrastab selftest``."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

from src.config.settings import HarnessConfig
from src.errors import LevelEscalationError, SearchExhaustedError
from src.padic.linalg import inverse, matmul
from src.padic.scalar import bit_length_cap, vp
from src.reynolds import coefficient_module, reynolds_identity_check, weight_decompose
from src.stability.chain import run_chain
from src.stability.constants import StabilityConstants, compute_constants
from src.stability.decomposition import decompose_g
from src.stability.harness import run_verification
from src.stability.sampling import (
    random_apartment_point,
    random_group_element,
    random_integral_element,
    random_laurent,
    random_scalar,
    random_translation,
    random_vector,
    worker_rng,
)
from src.tree import act, convex_hull, distance, fixed_point_in_hull, geodesic, orbit, standard_vertex, y_membership
from src.tree.lattice import LatticeClass, smith_distance
from src.tropical import TorusElement, check_midpoint_convexity, gauss_eval, translate_action
from src.ultranorm import DiagonalUltraNorm, dual_ball_sup, norm_eval

logger = logging.getLogger(__name__)


# row name -> the step of the argument it certifies; chain rows share the
# names of src.stability.chain.CHAIN_CHECKS
REFERENCES: dict[str, str] = {
    "gauss_seminorm_axioms": "seminorm.multiplicative",
    "midpoint_convexity": "seminorm.log_convex",
    "torus_equivariance": "seminorm.torus_equivariant",
    "dual_ball_identity": "norm.dual_ball",
    "tree_distance_oracle": "tree.metric",
    "action_isometry": "tree.metric",
    "orbit_hull_fixed_point": "tree.hull_fixed_point",
    "reynolds_identity": "coefficients.reynolds",
    "decomposition": "group.y_times_centralizer",
    "operator_norm_bound": "chain.c2",
    "constant_projection": "chain.c1",
    "conjugated_projection": "chain.c1_conjugated",
    "reynolds_step": "chain.reynolds",
    "compact_sup": "chain.c3",
    "combined": "chain.c1_c3",
    "window_bound": "chain.c4_window",
    "main_inequality": "chain.main",
}

# acceptance scale per row when no sample count is forced
SAMPLES: dict[str, int] = {
    "gauss_seminorm_axioms": 1000,
    "midpoint_convexity": 500,
    "torus_equivariance": 500,
    "dual_ball_identity": 500,
    "tree_distance_oracle": 500,
    "action_isometry": 500,
    "orbit_hull_fixed_point": 100,
    "reynolds_identity": 200,
    "decomposition": 200,
}


@dataclass(frozen=True)
class SelftestRow:
    name: str
    samples: int
    failures: int
    skipped: int = 0

    @property
    def reference(self) -> str:
        return REFERENCES[self.name]

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> dict:
        return {
            "reference": self.reference,
            "name": self.name,
            "samples": self.samples,
            "failures": self.failures,
            "skipped": self.skipped,
            "passed": self.passed,
        }


def gauss_seminorm_axioms(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    p, failures = config.prime, 0
    for _ in range(samples):
        f, g = random_laurent(rng, 1, p), random_laurent(rng, 1, p)
        lam = random_apartment_point(rng, 1)
        a = random_scalar(rng, p, -3, 3)
        ok = gauss_eval(f * g, lam) == gauss_eval(f, lam) + gauss_eval(g, lam)
        ok = ok and gauss_eval(f.scale(a), lam) == vp(a, p) + gauss_eval(f, lam)
        ok = ok and gauss_eval(f + g, lam) >= min(gauss_eval(f, lam), gauss_eval(g, lam))
        failures += not ok
    return SelftestRow("gauss_seminorm_axioms", samples, failures)


def midpoint_convexity(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    failures = 0
    for _ in range(samples):
        rank = int(rng.integers(1, 3))
        f = random_laurent(rng, rank, config.prime)
        failures += not check_midpoint_convexity(f, random_apartment_point(rng, rank), random_apartment_point(rng, rank))
    return SelftestRow("midpoint_convexity", samples, failures)


def torus_equivariance(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    p, failures = config.prime, 0
    for _ in range(samples):
        f = random_laurent(rng, 2, p)
        mu = TorusElement.from_free_coordinates([random_scalar(rng, p, -3, 3) for _ in range(2)], p)
        lam = random_apartment_point(rng, 2)
        failures += gauss_eval(f.translate(mu), lam) != gauss_eval(f, translate_action(lam, mu))
    return SelftestRow("torus_equivariance", samples, failures)


def dual_ball_identity(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    """Random integer-weight norms and the configured norm; the sup never exceeds the norm"""
    p, failures = config.prime, 0
    configured = config.norm()
    for _ in range(samples):
        m = int(rng.integers(1, 5))
        N = DiagonalUltraNorm(m, tuple(int(w) for w in rng.integers(-3, 4, size=m)), p)
        v = random_vector(rng, m, p, -3, 3)
        failures += dual_ball_sup(N, v) != norm_eval(N, v)
        v = random_vector(rng, configured.dimension, p, -3, 3)
        sup, norm = dual_ball_sup(configured, v), norm_eval(configured, v)
        failures += not (sup == norm if configured.has_integer_weights() else sup >= norm)
    return SelftestRow("dual_ball_identity", samples, failures)


def _random_vertex(rng: np.random.Generator, p: int) -> LatticeClass:
    return act(random_group_element(rng, p, -6, 6), standard_vertex(p))


def tree_distance_oracle(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    p, failures = config.prime, 0
    for _ in range(samples):
        u, v = _random_vertex(rng, p), _random_vertex(rng, p)
        d = distance(u, v)
        failures += not (smith_distance(u, v) == d == len(geodesic(u, v)) - 1)
    return SelftestRow("tree_distance_oracle", samples, failures)


def action_isometry(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    p, failures = config.prime, 0
    for _ in range(samples):
        g = random_group_element(rng, p, -3, 3)
        u, v = _random_vertex(rng, p), _random_vertex(rng, p)
        failures += distance(act(g, u), act(g, v)) != distance(u, v)
    return SelftestRow("action_isometry", samples, failures)


def orbit_hull_fixed_point(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    p, H = config.prime, config.torus()
    failures = skipped = 0
    for _ in range(samples):
        y = matmul(random_integral_element(rng, p), random_translation(rng, p, -1, 1))
        y = matmul(y, random_integral_element(rng, p))
        try:
            hull = convex_hull(orbit(H, act(inverse(y), standard_vertex(p))))
        except LevelEscalationError:
            skipped += 1
            continue
        try:
            fixed_point_in_hull(H, hull)
        except AssertionError:
            failures += 1
    return SelftestRow("orbit_hull_fixed_point", samples, failures, skipped)


def reynolds_identity(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    spec = config.rep_spec()
    W, C = weight_decompose(spec), coefficient_module(spec)
    failures = 0
    for _ in range(samples):
        y = random_group_element(rng, spec.prime, -3, 3)
        v = random_vector(rng, spec.dimension, spec.prime, -3, 3)
        phi = random_vector(rng, spec.dimension, spec.prime, -3, 3)
        failures += not reynolds_identity_check(spec, y, v, phi, W, C)
    return SelftestRow("reynolds_identity", samples, failures)


def decomposition(config: HarnessConfig, rng: np.random.Generator, samples: int) -> SelftestRow:
    window, H = config.window(), config.torus()
    failures = 0
    for _ in range(samples):
        g = random_group_element(rng, config.prime, config.group_valuations.low, config.group_valuations.high)
        try:
            result = decompose_g(g, window, H, config.translation_units)
        except SearchExhaustedError as error:
            logger.error("decomposition failed: %s", error)
            failures += 1
            continue
        failures += not (y_membership(result.y, window, H).member and matmul(result.y, result.z) == g)
    return SelftestRow("decomposition", samples, failures)


CHECKS: dict[str, Callable[[HarnessConfig, np.random.Generator, int], SelftestRow]] = {
    "gauss_seminorm_axioms": gauss_seminorm_axioms,
    "midpoint_convexity": midpoint_convexity,
    "torus_equivariance": torus_equivariance,
    "dual_ball_identity": dual_ball_identity,
    "tree_distance_oracle": tree_distance_oracle,
    "action_isometry": action_isometry,
    "orbit_hull_fixed_point": orbit_hull_fixed_point,
    "reynolds_identity": reynolds_identity,
    "decomposition": decomposition,
}


@dataclass(frozen=True)
class SelftestReport:
    rows: list[SelftestRow]
    constants: StabilityConstants

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "rows": [row.to_json() for row in self.rows],
            "constants": self.constants.to_json(),
        }

    def table(self) -> str:
        ref = max(len(row.reference) for row in self.rows)
        width = max(len(row.name) for row in self.rows)
        lines = [f"{'reference':<{ref}}  {'check':<{width}}  samples  failures  result"]
        for row in self.rows:
            lines.append(f"{row.reference:<{ref}}  {row.name:<{width}}  {row.samples:>7}  {row.failures:>8}  {'PASS' if row.passed else 'FAIL'}")
        return "\n".join(lines)


def run_selftest(config: HarnessConfig, samples: int | None = None) -> SelftestReport:
    """Every invariant check, the chain checks and the main inequality sweep.

    Without ``samples`` each invariant row runs at its acceptance scale, the chain
    at ``config.chain_samples`` and the main sweep at ``config.samples``; a given
    ``samples`` forces one count on every row.
    """
    rows = []
    with bit_length_cap(config.bit_length_cap):
        for index, (name, check) in enumerate(CHECKS.items()):
            rows.append(check(config, worker_rng(config.seed, 2000 + index), samples or SAMPLES[name]))
            logger.info("selftest %s: %d failures", name, rows[-1].failures)
        constants = compute_constants(
            config.rep_spec(), config.omega_set(), config.norm(), config.window(), config.level, config.enumeration_budget
        )
    for result in run_chain(config, constants, samples or config.chain_samples):
        rows.append(SelftestRow(result.name, result.samples, result.failures))
    report = run_verification(config, constants, samples or config.samples)
    rows.append(SelftestRow("main_inequality", len(report.samples), report.violations))
    return SelftestReport(rows, constants)
