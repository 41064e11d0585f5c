from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.errors import DomainError
from src.padic.linalg import as_matrix, diagonal, matmul
from src.tropical import (
    LaurentPolynomial,
    MatrixFunction,
    gauss_eval,
    left_translate,
    restrict_to_torus,
    right_translate,
    translated_torus_restriction,
    vertex_seminorm,
)
from src.tropical.matrix_functions import matrix_symbols

P = 3
small = st.fractions(min_value=-9, max_value=9, max_denominator=9)


def test_trace_restricts_to_character_plus_inverse():
    expected = LaurentPolynomial((((1,), Fraction(1)), ((-1,), Fraction(1))), 1, P)
    assert restrict_to_torus(MatrixFunction.trace(2, P)) == expected


def test_off_diagonal_entry_vanishes_on_the_torus():
    assert restrict_to_torus(MatrixFunction.entry(1, 2, 2, P)).is_zero()


def test_entry_indices_are_checked():
    with pytest.raises(DomainError):
        MatrixFunction.entry(3, 1, 2, P)


def test_translates_by_a_torus_element():
    t = diagonal([Fraction(P), Fraction(1, P)])
    x11 = MatrixFunction.entry(1, 1, 2, P)
    x12 = MatrixFunction.entry(1, 2, 2, P)
    assert left_translate(x11, t) == x11.scale(P)
    assert right_translate(x12, t) == x12.scale(Fraction(1, P))


def test_evaluate_matches_sympy_substitution():
    F = MatrixFunction.trace(2, P) * MatrixFunction.entry(2, 1, 2, P)
    g = as_matrix([[2, 3], [5, 8]])
    values = dict(zip(matrix_symbols(2), [2, 3, 5, 8]))
    assert F.evaluate(g) == Fraction(str(F.poly.as_expr().subs(values)))


def test_normal_form_replaces_the_diagonal_product():
    x = {(i, j): MatrixFunction.entry(i, j, 2, P) for i in (1, 2) for j in (1, 2)}
    reduced = (x[1, 1] * x[2, 2]).normal_form()
    assert reduced == x[1, 2] * x[2, 1] + MatrixFunction.constant(1, 2, P)


def test_vertex_seminorm_examples():
    x11 = MatrixFunction.entry(1, 1, 2, P)
    assert vertex_seminorm(x11, 0, 0) == 0
    assert vertex_seminorm(x11, 2, 0) == 1
    assert vertex_seminorm(MatrixFunction.entry(2, 1, 2, P), 2, 0) == -1
    # x11 (n_b x) = x11 + b x21
    assert vertex_seminorm(x11, 2, Fraction(1)) == -1


def test_vertex_seminorm_is_bounded_by_the_torus_restriction():
    F = MatrixFunction.trace(2, P) + MatrixFunction.entry(1, 2, 2, P).scale(P)
    g = as_matrix([[1, Fraction(1, P)], [0, 1]])
    restricted = translated_torus_restriction(F, g)
    assert vertex_seminorm(F, 0, Fraction(1, P)) <= gauss_eval(restricted, (Fraction(0),))


@given(small, small, small, small)
def test_fast_torus_restriction_matches_expansion(a, b, c, d):
    g = as_matrix([[a, b], [c, d]])
    F = MatrixFunction.trace(2, P) * MatrixFunction.entry(1, 2, 2, P) + MatrixFunction.entry(2, 2, 2, P)
    assert translated_torus_restriction(F, g) == restrict_to_torus(left_translate(F, g))


@given(small, small, small, small)
def test_left_translates_compose(a, b, c, d):
    g = as_matrix([[a, b], [c, d]])
    h = as_matrix([[1, 2], [0, 1]])
    F = MatrixFunction.entry(1, 1, 2, P) * MatrixFunction.entry(2, 1, 2, P)
    assert left_translate(left_translate(F, g), h) == left_translate(F, matmul(g, h))
