from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DomainError
from src.padic import INFINITY, vp
from src.ultranorm import (
    DiagonalUltraNorm,
    LinearMap,
    Vector,
    attaining_basis_index,
    dual_ball_sup,
    dual_norm,
    norm_eval,
    operator_norm,
)

P = 3
entries = st.fractions(min_value=-50, max_value=50, max_denominator=81)
vectors = st.lists(entries, min_size=3, max_size=3).map(lambda xs: Vector.of(xs, P))
integer_weights = st.lists(st.integers(-3, 3), min_size=3, max_size=3)


def test_norm_eval_examples():
    sup = DiagonalUltraNorm.sup(2, P)
    assert norm_eval(sup, Vector.of([1, P], P)) == 0
    assert norm_eval(sup, Vector.of([0, 0], P)) == INFINITY
    weighted = DiagonalUltraNorm(2, (Fraction(0), Fraction(1)), P)
    assert norm_eval(weighted, Vector.of([P**2, 1], P)) == 1


def test_norm_dimension_mismatch():
    with pytest.raises(DomainError) as info:
        norm_eval(DiagonalUltraNorm.sup(2, P), Vector.of([1, 2, 3], P))
    assert info.value.precondition == "dimension_match"


def test_operator_norm_examples():
    sup = DiagonalUltraNorm.sup(2, P)
    assert operator_norm(sup, sup, LinearMap.of([[1, 0], [0, 1]], P)) == 0
    assert operator_norm(sup, sup, LinearMap.of([[P, 0], [0, Fraction(1, P)]], P)) == -1
    assert operator_norm(sup, sup, LinearMap.of([[0, 0], [0, 0]], P)) == INFINITY


def test_dual_ball_sup_examples():
    sup = DiagonalUltraNorm.sup(2, P)
    assert dual_ball_sup(sup, Vector.of([1, 0], P)) == 0
    assert dual_ball_sup(sup, Vector.of([0, 0], P)) == INFINITY
    weighted = DiagonalUltraNorm(2, (Fraction(1), Fraction(0)), P)
    v = Vector.of([1, P], P)
    assert dual_ball_sup(weighted, v) == norm_eval(weighted, v) == 1


def test_dual_ball_sup_bounded_by_norm_for_fractional_weights():
    norm = DiagonalUltraNorm(2, (Fraction(1, 2), Fraction(-1, 3)), P)
    assert not norm.has_integer_weights()
    assert DiagonalUltraNorm(2, (Fraction(2), Fraction(-1)), P).has_integer_weights()
    v = Vector.of([1, 1], P)
    assert dual_ball_sup(norm, v) >= norm_eval(norm, v)


def test_dual_norm_of_coordinate_functional():
    norm = DiagonalUltraNorm(2, (Fraction(2), Fraction(0)), P)
    assert dual_norm(norm, Vector.of([1, 0], P)) == -2
    assert dual_norm(norm, Vector.of([P**2, 0], P)) == 0


def test_norm_json_record():
    norm = DiagonalUltraNorm(2, (Fraction(1, 2), Fraction(0)), 5)
    assert norm.to_json() == {"dimension": 2, "weight_exponents": ["1/2", "0/1"], "p": 5}
    assert DiagonalUltraNorm.from_json(norm.to_json()) == norm


@given(vectors, st.fractions(max_denominator=100).filter(lambda x: x != 0), integer_weights)
def test_homogeneity(v, scalar, weights):
    norm = DiagonalUltraNorm(3, tuple(Fraction(w) for w in weights), P)
    assert norm_eval(norm, v.scale(scalar)) == vp(scalar, P) + norm_eval(norm, v)


@given(vectors, vectors)
def test_ultrametric(x, y):
    norm = DiagonalUltraNorm(3, (Fraction(0), Fraction(1), Fraction(-1, 2)), P)
    assert norm_eval(norm, x + y) >= min(norm_eval(norm, x), norm_eval(norm, y))


@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3), vectors, integer_weights, integer_weights)
@settings(max_examples=200)
def test_operator_norm_is_sound_and_attained(rows, v, w_src, w_dst):
    src = DiagonalUltraNorm(3, tuple(Fraction(w) for w in w_src), P)
    dst = DiagonalUltraNorm(3, tuple(Fraction(w) for w in w_dst), P)
    a = LinearMap.of(rows, P)
    bound = operator_norm(src, dst, a)
    assert norm_eval(dst, a.apply(v)) >= bound + norm_eval(src, v)
    j = attaining_basis_index(src, dst, a)
    if bound != INFINITY:
        e_j = Vector.of([int(i == j) for i in range(3)], P)
        assert norm_eval(dst, a.apply(e_j)) == bound + norm_eval(src, e_j)


@given(vectors, integer_weights)
@settings(max_examples=200)
def test_dual_ball_matches_norm_for_integer_weights(v, weights):
    norm = DiagonalUltraNorm(3, tuple(Fraction(w) for w in weights), P)
    assert dual_ball_sup(norm, v) == norm_eval(norm, v)
