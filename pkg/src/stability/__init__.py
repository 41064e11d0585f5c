from src.stability.chain import CHAIN_CHECKS, ChainResult, run_chain
from src.stability.constants import (
    C1Result,
    C3Result,
    C4Result,
    StabilityConstants,
    compute_c1,
    compute_c2,
    compute_c3,
    compute_c4,
    compute_constants,
)
from src.stability.decomposition import Decomposition, decompose_g
from src.stability.harness import (
    OptimalC,
    SampleRecord,
    VerificationReport,
    empirical_optimal_c,
    run_verification,
    verify_inequality,
)
from src.stability.selftest import SelftestReport, SelftestRow, run_selftest

__all__ = [
    "CHAIN_CHECKS",
    "C1Result",
    "C3Result",
    "C4Result",
    "ChainResult",
    "Decomposition",
    "OptimalC",
    "SampleRecord",
    "SelftestReport",
    "SelftestRow",
    "StabilityConstants",
    "VerificationReport",
    "compute_c1",
    "compute_c2",
    "compute_c3",
    "compute_c4",
    "compute_constants",
    "decompose_g",
    "empirical_optimal_c",
    "run_chain",
    "run_selftest",
    "run_verification",
    "verify_inequality",
]
