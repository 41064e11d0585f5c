"""Sampled verification of min_omega val(rho(y omega) v) <= val(v) + c_log on Y."""

from __future__ import annotations

import logging
from fractions import Fraction
from multiprocessing import Pool
from typing import Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from src.config.settings import HarnessConfig
from src.errors import DomainError
from src.padic.linalg import Matrix, as_vector, matmul, matrix_to_json, matvec
from src.padic.scalar import INFINITY, ExactRational, ExactValuation, Valuation, bit_length_cap, format_rational
from src.reynolds import OmegaSet, RepSpec, rho
from src.stability.constants import StabilityConstants, compute_constants, log_to_real
from src.stability.sampling import random_vector, sample_y, worker_rng
from src.ultranorm import DiagonalUltraNorm, norm_eval

logger = logging.getLogger(__name__)


class SampleRecord(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    y: list[list[str]]
    v: list[str]
    lhs: ExactValuation = Field(description="min over Omega of val(rho(y omega) v)")
    norm_v: ExactValuation = Field(description="val(v) under the diagonal norm")
    rhs: ExactValuation = Field(description="val(v) + c_log")
    margin: ExactValuation = Field(description="rhs - lhs; nonnegative exactly when the inequality holds")
    holds: bool
    membership: Optional[str] = None

    @property
    def excess(self) -> Valuation | None:
        """lhs - val(v): the smallest c_log this sample needs; None for v = 0"""
        if self.norm_v == INFINITY:
            return None
        return self.lhs - self.norm_v


def verify_inequality(
    y: Matrix,
    v: Sequence[Fraction],
    omega: OmegaSet,
    spec: RepSpec,
    N: DiagonalUltraNorm,
    c_log: Fraction,
    membership: str | None = None,
) -> SampleRecord:
    v = as_vector(v)
    lhs = min(norm_eval(N, matvec(rho(spec, matmul(y, w)), v)) for w in omega.matrices())
    norm_v = norm_eval(N, v)
    rhs = norm_v + c_log
    if norm_v == INFINITY:
        # v = 0 satisfies the inequality for every c
        margin, holds = INFINITY, True
    else:
        margin, holds = rhs - lhs, lhs <= rhs
    return SampleRecord(
        y=matrix_to_json(y),
        v=[format_rational(x) for x in v],
        lhs=lhs,
        norm_v=norm_v,
        rhs=rhs,
        margin=margin,
        holds=holds,
        membership=membership,
    )


class CandidateOutcome(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c_log: ExactRational
    violations: int
    holds: bool


class VerificationReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    config_hash: str
    seed: int
    workers: int
    constants: StabilityConstants
    c_log: ExactRational = Field(description="Constant the records were checked against (c_safe)")
    samples: list[SampleRecord]
    violations: int
    candidates: dict[str, CandidateOutcome]
    empirical_optimal_c_log: Optional[ExactRational] = None

    def to_json(self) -> dict:
        record = self.model_dump(mode="json", exclude={"constants"})
        record["constants"] = self.constants.to_json()
        return record

    def margin_rows(self) -> list[dict[str, str]]:
        """One CSV row per sample"""
        rows = []
        for i, sample in enumerate(self.samples):
            dumped = sample.model_dump(mode="json")
            rows.append({"index": str(i), **{k: dumped[k] for k in ("lhs", "norm_v", "margin")}, "holds": str(sample.holds)})
        return rows


def sweep(config: HarnessConfig, worker: int, count: int, c_log: Fraction) -> list[SampleRecord]:
    """``count`` samples drawn from the (seed, worker) stream"""
    rng = worker_rng(config.seed, worker)
    spec, N, omega = config.rep_spec(), config.norm(), config.omega_set()
    window, H = config.window(), config.torus()
    exponents = (config.translation_exponents.low, config.translation_exponents.high)
    low, high = config.vector_valuations.low, config.vector_valuations.high
    records = []
    with bit_length_cap(config.bit_length_cap):
        for _ in range(count):
            y, membership = sample_y(rng, window, H, exponents)
            v = random_vector(rng, spec.dimension, spec.prime, low, high)
            records.append(verify_inequality(y, v, omega, spec, N, c_log, membership.method))
    logger.debug("worker %d checked %d samples", worker, count)
    return records


def split_samples(total: int, workers: int) -> list[int]:
    base, extra = divmod(total, workers)
    return [base + (1 if w < extra else 0) for w in range(workers)]


def candidate_outcomes(samples: Sequence[SampleRecord], constants: StabilityConstants) -> dict[str, CandidateOutcome]:
    outcomes = {}
    for name, c in constants.candidates().items():
        violations = sum(1 for s in samples if s.norm_v != INFINITY and s.lhs > s.norm_v + c)
        outcomes[name] = CandidateOutcome(c_log=c, violations=violations, holds=violations == 0)
    return outcomes


def run_verification(
    config: HarnessConfig,
    constants: StabilityConstants | None = None,
    samples: int | None = None,
) -> VerificationReport:
    """Main sweep against c_safe, with the outcome of every assembly candidate"""
    if constants is None:
        constants = compute_constants(
            config.rep_spec(),
            config.omega_set(),
            config.norm(),
            config.window(),
            config.level,
            config.enumeration_budget,
        )
    total = samples or config.samples
    c_log = constants.c_safe
    counts = split_samples(total, config.workers)
    if config.workers == 1:
        records = sweep(config, 0, counts[0], c_log)
    else:
        with Pool(config.workers) as pool:
            jobs = [pool.apply_async(sweep, (config, w, n, c_log)) for w, n in enumerate(counts)]
            pool.close()
            pool.join()
        records = [r for job in jobs for r in job.get()]
    violations = sum(1 for r in records if not r.holds)
    report = VerificationReport(
        config_hash=config.config_hash(),
        seed=config.seed,
        workers=config.workers,
        constants=constants,
        c_log=c_log,
        samples=records,
        violations=violations,
        candidates=candidate_outcomes(records, constants),
    )
    optimal = empirical_optimal_c(report)
    report.empirical_optimal_c_log = optimal.c_log
    if violations:
        logger.error("%d of %d samples violate the inequality with c_log = %s", violations, total, c_log)
    else:
        logger.info("no violations over %d samples with c_log = %s", total, c_log)
    return report


class OptimalC(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    c_log: Optional[ExactRational] = Field(description="Largest lhs - val(v) observed; None if every v was 0")
    c: Optional[float] = Field(description="p^c_log, for display")
    samples: int
    within: dict[str, bool] = Field(description="Whether each candidate is at least the observed optimum")


def empirical_optimal_c(report: VerificationReport) -> OptimalC:
    if not report.samples:
        raise DomainError("nonempty_report", "no samples to take the optimal constant from")
    excesses = [s.excess for s in report.samples if s.excess is not None]
    if not excesses:
        return OptimalC(c_log=None, c=None, samples=len(report.samples), within={})
    best = Fraction(max(excesses))
    within = {name: best <= c for name, c in report.constants.candidates().items()}
    return OptimalC(c_log=best, c=log_to_real(best, report.constants.prime), samples=len(report.samples), within=within)
