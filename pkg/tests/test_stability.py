from fractions import Fraction

import pytest

from src.config import HarnessConfig
from src.errors import DomainError
from src.padic.linalg import as_matrix, diagonal, identity, inverse, matmul, matvec, transpose
from src.padic.scalar import INFINITY, vp
from src.reynolds import CoeffModule, OmegaSet, RepSpec, coefficient_module, default_omega, evaluation_matrix, rho
from src.stability import (
    StabilityConstants,
    compute_c1,
    compute_c2,
    compute_c3,
    compute_c4,
    decompose_g,
    empirical_optimal_c,
    run_chain,
    run_selftest,
    run_verification,
    verify_inequality,
)
from src.stability.chain import CHAIN_CHECKS
from src.stability.constants import certifying_vectors, gauss_at_o, window_value
from src.stability.decomposition import search_exponents
from src.stability.harness import split_samples
from src.stability.sampling import random_group_element, random_vector, sample_y, worker_rng
from src.stability.selftest import CHECKS, REFERENCES, SAMPLES as SELFTEST_SAMPLES
from src.tree import CompactGroupSpec, coset_representatives, default_window, standard_vertex, y_membership
from src.tropical import MatrixFunction, TorusElement
from src.ultranorm import DiagonalUltraNorm, operator_norm

P = 3
STANDARD = RepSpec(2, "standard", P)
SUP = DiagonalUltraNorm.sup(2, P)


def test_c2_examples():
    assert compute_c2(OmegaSet.from_exponents([[0]], P), STANDARD, SUP) == 0
    assert compute_c2(OmegaSet.from_exponents([[1]], P), STANDARD, SUP) == -1


def test_c2_never_increases_with_omega():
    small = OmegaSet.from_exponents([[0]], P)
    large = OmegaSet.from_exponents([[0], [1], [-2]], P)
    assert compute_c2(large, STANDARD, SUP) <= compute_c2(small, STANDARD, SUP)


def test_c2_matches_the_range_over_omega_alone():
    omega = OmegaSet.from_exponents([[0], [1], [-3]], P)
    N = DiagonalUltraNorm(2, (Fraction(1), Fraction(-2)), P)
    over_omega = min(operator_norm(N, N, rho(STANDARD, w)) for w in omega.matrices())
    assert compute_c2(omega, STANDARD, N) == over_omega == -3


def test_c1_for_constants_only():
    C = CoeffModule(STANDARD, ((0,),))
    result = compute_c1(OmegaSet.from_exponents([[0]], P), C)
    assert result.c1_log == 0
    assert result.additive == 2


def test_c1_for_standard_default_omega():
    # pi_k(f) = 41/32 f(1) - 9/64 (f(diag(3, 1/3)) + f(diag(1/3, 3)))
    result = compute_c1(default_omega(STANDARD), coefficient_module(STANDARD))
    assert result.c1_log == 0
    assert sorted(result.basis_indices) == [0, 1, 2]


def test_c1_requires_star_condition():
    with pytest.raises(DomainError) as error:
        compute_c1(OmegaSet.from_exponents([[0]], P), coefficient_module(STANDARD))
    assert error.value.precondition == "star_condition"


def test_c1_ignores_unit_rescaling_of_omega():
    C = coefficient_module(STANDARD)
    plain = compute_c1(OmegaSet.from_exponents([[-1], [0], [1]], P), C)
    # diag(2, 1/2) changes every character value by a unit
    shifted = OmegaSet(tuple(TorusElement.from_free_coordinates([2 * Fraction(P) ** j], P) for j in (-1, 0, 1)))
    assert compute_c1(shifted, C).c1_log == plain.c1_log


def _projection_ratio(rows, coefficients, zero):
    """log_p of |pi_k f| / sup over the rows of |f| for f with the given coefficients"""
    sup = min(vp(x, P) for x in matvec(rows, coefficients))
    return sup - vp(coefficients[zero], P)


@pytest.mark.parametrize("exponents", [[[-1], [0], [1]], [[0], [1], [2]], [[0], [2], [-3]]])
def test_c1_is_attained_on_the_adapted_basis(exponents):
    omega = OmegaSet.from_exponents(exponents, P)
    C = coefficient_module(STANDARD)
    result = compute_c1(omega, C)
    rows = evaluation_matrix(omega, C)
    M_b = tuple(rows[i] for i in result.basis_indices)
    zero = C.characters.index((0,))
    dual_basis = transpose(inverse(M_b))
    ratios = [_projection_ratio(M_b, f, zero) for f in dual_basis if f[zero] != 0]
    assert max(ratios) == result.c1_log
    for f in [(1, 1, 1), (P, 1, P**2), (1, -2, 5), (Fraction(1, P), 0, 1)]:
        f = tuple(Fraction(x) for x in f)
        if f[zero] != 0:
            assert _projection_ratio(M_b, f, zero) <= result.c1_log


def test_entry_function_has_ratio_one_at_level_two():
    x11 = MatrixFunction.entry(1, 1, 2, P)
    assert gauss_at_o(x11) == 0
    sup = min(vp(x11.evaluate(k), P) for k in coset_representatives(CompactGroupSpec.sl2(P), 2))
    assert sup == 0


def test_c3_dominates_every_family_ratio():
    result = compute_c3(STANDARD, 2)
    assert result.c3_log >= 0
    assert 0 <= result.family_ratio_log <= result.c3_log
    assert result.points == CompactGroupSpec.sl2(P).index(2)


def test_c3_respects_enumeration_budget():
    with pytest.raises(DomainError) as error:
        compute_c3(STANDARD, 2, budget=100)
    assert error.value.precondition == "enumeration_budget"


def test_c3_and_c4_need_sl2():
    with pytest.raises(DomainError):
        compute_c3(RepSpec(3, "standard", P), 1)


def test_certifying_vectors():
    vectors = certifying_vectors(3)
    assert len(vectors) == 6
    assert (Fraction(1), Fraction(1), Fraction(0)) in vectors


def test_window_value_at_standard_vertex():
    assert window_value(STANDARD, SUP, standard_vertex(P), (Fraction(1), Fraction(0))) == 0


def test_c4_examples():
    assert compute_c4([standard_vertex(P)], STANDARD, SUP).c4_log == 0
    with pytest.raises(DomainError) as error:
        compute_c4([], STANDARD, SUP)
    assert error.value.precondition == "nonempty_window"


def test_c4_grows_with_the_window():
    small = compute_c4([standard_vertex(P)], STANDARD, SUP).c4_log
    large = compute_c4(default_window(P), STANDARD, SUP).c4_log
    assert small <= large


def test_candidates():
    constants = StabilityConstants(
        prime=P,
        rep=STANDARD.to_json(),
        c1_log=Fraction(1),
        c1_additive=Fraction(4),
        c2_log=Fraction(-1),
        c3_log=Fraction(2),
        c3_family_ratio_log=Fraction(1),
        c3_level=2,
        c4_log=Fraction(1),
        omega_basis=[0, 1, 2],
        window_size=9,
    )
    candidates = constants.candidates()
    assert candidates["c_A"] == 1
    assert candidates["c_B"] == -1
    assert candidates["c_traced"] == 5
    assert constants.c_safe == 5
    assert constants.to_json()["candidates"]["c_traced"] == "5/1"


def test_constants_fixture(small_constants):
    assert small_constants.c1_log == 0
    assert small_constants.c2_log == -1
    assert small_constants.c_safe >= 0
    assert small_constants.window_size == 9


def test_verify_inequality_with_zero_vector():
    omega = default_omega(STANDARD)
    record = verify_inequality(identity(2), (0, 0), omega, STANDARD, SUP, Fraction(-100))
    assert record.holds
    assert record.margin == INFINITY
    assert record.excess is None
    assert record.model_dump(mode="json")["margin"] == "inf"


def test_verify_inequality_at_identity():
    omega = default_omega(STANDARD)
    record = verify_inequality(identity(2), (Fraction(3), Fraction(1, 9)), omega, STANDARD, SUP, Fraction(0))
    assert record.holds
    assert record.margin >= 0
    assert record.model_dump(mode="json")["norm_v"] == "-2/1"


def test_verify_inequality_reports_violations():
    omega = OmegaSet.from_exponents([[0]], P)
    y = diagonal([Fraction(P) ** 2, Fraction(1, P**2)])
    record = verify_inequality(y, (Fraction(1), Fraction(0)), omega, STANDARD, SUP, Fraction(1))
    assert not record.holds
    assert record.margin == -1


def test_excess_is_invariant_under_rescaling():
    omega = default_omega(STANDARD)
    y = as_matrix([[1, 1], [0, 1]])
    v = (Fraction(2), Fraction(5, 3))
    scaled = tuple(Fraction(P**2) * x for x in v)
    a = verify_inequality(y, v, omega, STANDARD, SUP, Fraction(0))
    b = verify_inequality(y, scaled, omega, STANDARD, SUP, Fraction(0))
    assert a.excess == b.excess


def test_search_exponents():
    assert list(search_exponents(2)) == [0, 1, -1, 2, -2]


def test_decompose_identity(window, torus):
    result = decompose_g(identity(2), window, torus)
    assert result.y == identity(2)
    assert result.z == identity(2)
    assert result.tried == 1


def test_decompose_recenters_translations(window, torus):
    g = diagonal([Fraction(P) ** 3, Fraction(1, P**3)])
    result = decompose_g(g, window, torus)
    assert result.exponent == 3
    assert result.y == identity(2)
    assert result.to_json()["exponent"] == 3


def test_decompose_needs_special_linear(window, torus):
    with pytest.raises(DomainError) as error:
        decompose_g(diagonal([2, 1]), window, torus)
    assert error.value.precondition == "special_linear"


def test_decompose_random_elements(small_config):
    rng = worker_rng(small_config.seed)
    window, H = small_config.window(), small_config.torus()
    for _ in range(small_config.decomposition_samples):
        g = random_group_element(rng, P, -5, 5)
        result = decompose_g(g, window, H, small_config.translation_units)
        assert matmul(result.y, result.z) == g
        assert y_membership(result.y, window, H).member


def test_sampled_y_lies_in_y(window, torus):
    rng = worker_rng(1)
    for _ in range(5):
        y, membership = sample_y(rng, window, torus)
        assert membership.member
        assert y_membership(y, window, torus).member


def test_random_vector_is_nonzero():
    rng = worker_rng(5)
    for _ in range(50):
        assert any(random_vector(rng, 3, P, -1, 1, zero_rate=0.9))


def test_split_samples():
    assert split_samples(10, 3) == [4, 3, 3]
    assert sum(split_samples(7, 7)) == 7


def test_verification_is_deterministic(small_config, small_constants):
    first = run_verification(small_config, small_constants)
    second = run_verification(small_config, small_constants)
    assert first.to_json() == second.to_json()
    assert first.violations == 0
    assert first.candidates["c_safe"].holds
    assert len(first.margin_rows()) == small_config.samples


def test_empirical_optimal_c(small_config, small_constants):
    report = run_verification(small_config, small_constants)
    optimal = empirical_optimal_c(report)
    assert optimal.c_log <= small_constants.c_safe
    assert optimal.within["c_safe"]
    assert report.empirical_optimal_c_log == optimal.c_log


def test_empirical_optimal_c_needs_samples(small_config, small_constants):
    report = run_verification(small_config, small_constants)
    empty = report.model_copy(update={"samples": []})
    with pytest.raises(DomainError):
        empirical_optimal_c(empty)


def test_chain_checks_hold(small_config, small_constants):
    results = run_chain(small_config, small_constants)
    assert [r.name for r in results] == [
        "operator_norm_bound",
        "constant_projection",
        "conjugated_projection",
        "reynolds_step",
        "compact_sup",
        "combined",
        "window_bound",
    ]
    for result in results:
        assert result.holds, result.to_json()


def test_selftest_passes(small_config):
    report = run_selftest(small_config, samples=2)
    assert report.passed, report.table()
    names = [row.name for row in report.rows]
    assert names[0] == "gauss_seminorm_axioms"
    assert names[-1] == "main_inequality"
    assert report.table().splitlines()[0].startswith("reference")
    assert {row.reference for row in report.rows} >= {"seminorm.multiplicative", "chain.c2", "chain.main"}


def test_every_selftest_row_has_a_reference():
    assert set(REFERENCES) == set(CHECKS) | set(CHAIN_CHECKS) | {"main_inequality"}


def test_selftest_defaults_to_acceptance_scale(small_config, monkeypatch):
    for name in SELFTEST_SAMPLES:
        monkeypatch.setitem(SELFTEST_SAMPLES, name, 4)
    monkeypatch.setitem(SELFTEST_SAMPLES, "gauss_seminorm_axioms", 7)
    report = run_selftest(small_config)
    samples = {row.name: row.samples for row in report.rows}
    assert samples["gauss_seminorm_axioms"] == 7
    assert samples["midpoint_convexity"] == 4
    assert samples["operator_norm_bound"] == small_config.chain_samples
    assert samples["main_inequality"] == small_config.samples


def test_acceptance_sample_counts():
    assert SELFTEST_SAMPLES["gauss_seminorm_axioms"] >= 1000
    assert all(SELFTEST_SAMPLES[name] >= 500 for name in ("midpoint_convexity", "torus_equivariance", "dual_ball_identity"))
    assert HarnessConfig().samples >= 1000
