from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.errors import DomainError
from src.padic.linalg import add, as_matrix, diagonal, elementary, identity, inverse, matmul, matvec
from src.reynolds import (
    OmegaSet,
    RepSpec,
    adjoint_action,
    check_star,
    check_star_star,
    coefficient_function,
    coefficient_module,
    default_omega,
    generating_family,
    project_k,
    project_z,
    reynolds_identity_check,
    rho,
    symbolic_rho,
    weight_decompose,
)
from src.tropical import LaurentPolynomial, MatrixFunction
from tests.strategies import sl2_words

P = 3
STANDARD = RepSpec(2, "standard", P)
ADJOINT = RepSpec(2, "adjoint", P)
SYM3 = RepSpec(2, "sym", P, degree=3)
entries = st.fractions(min_value=-20, max_value=20, max_denominator=27)


def vectors(m: int):
    return st.lists(entries, min_size=m, max_size=m).map(tuple)


def endomorphisms(m: int):
    return st.lists(vectors(m), min_size=m, max_size=m).map(as_matrix)


def test_rep_dimensions():
    assert STANDARD.dimension == 2
    assert ADJOINT.dimension == 4
    assert SYM3.dimension == 4
    with pytest.raises(DomainError):
        RepSpec(3, "sym", P, degree=2)


def test_adjoint_action_examples():
    e = as_matrix([[1, 2], [3, 4]])
    assert adjoint_action(STANDARD, identity(2), e) == e
    g = as_matrix([[2, 1], [1, 1]])
    assert adjoint_action(STANDARD, g, identity(2)) == identity(2)
    t = diagonal([Fraction(P), Fraction(1, P)])
    assert adjoint_action(STANDARD, t, elementary(2, 0, 1)) == tuple(
        tuple(Fraction(P * P) * x for x in row) for row in elementary(2, 0, 1)
    )
    with pytest.raises(DomainError):
        adjoint_action(STANDARD, g, identity(3))


@given(sl2_words(P), sl2_words(P), endomorphisms(4))
@settings(max_examples=100, deadline=None)
def test_adjoint_action_is_a_homomorphism(g, h, e):
    assert adjoint_action(ADJOINT, matmul(g, h), e) == adjoint_action(ADJOINT, g, adjoint_action(ADJOINT, h, e))


@given(sl2_words(P), sl2_words(P))
@settings(deadline=None)
def test_symmetric_power_is_a_representation(g, h):
    assert rho(SYM3, matmul(g, h)) == matmul(rho(SYM3, g), rho(SYM3, h))


@given(sl2_words(P))
@settings(max_examples=30, deadline=None)
def test_symbolic_rho_evaluates_to_rho(g):
    for spec in (STANDARD, ADJOINT, SYM3):
        symbolic = symbolic_rho(spec)
        assert tuple(tuple(f.evaluate(g) for f in row) for row in symbolic) == rho(spec, g)


def test_weight_decomposition_of_the_standard_rep():
    W = weight_decompose(STANDARD)
    sizes = {chi: len(indices) for chi, indices in W.spaces}
    assert sizes == {(-2,): 1, (0,): 2, (2,): 1}
    assert W.dimension() == 4
    assert set(W.centralizer) == {(0, 0), (1, 1)}
    assert weight_decompose(ADJOINT).dimension() == 16


def test_project_z_examples():
    W = weight_decompose(STANDARD)
    d = diagonal([Fraction(2), Fraction(5)])
    assert project_z(W, d) == d
    assert project_z(W, elementary(2, 0, 1)) == ((0, 0), (0, 0))
    assert project_z(W, add(elementary(2, 0, 0), elementary(2, 0, 1))) == elementary(2, 0, 0)


@given(endomorphisms(4), st.integers(-3, 3))
def test_project_z_is_idempotent_and_equivariant(e, j):
    W = weight_decompose(ADJOINT)
    h = diagonal([Fraction(P) ** j, Fraction(P) ** -j])
    assert project_z(W, project_z(W, e)) == project_z(W, e)
    assert project_z(W, adjoint_action(ADJOINT, h, e)) == adjoint_action(ADJOINT, h, project_z(W, e))


def test_coefficient_function_examples():
    v, phi = (Fraction(2), Fraction(3)), (Fraction(5), Fraction(-1))
    f = coefficient_function(STANDARD, identity(2), v, phi)
    assert f == LaurentPolynomial.constant(7, 1, P)
    g = as_matrix([[1, 1], [0, 1]])
    single = coefficient_function(STANDARD, g, (0, 1), (1, 0))
    assert single.characters() == ((-2,),)
    generic = coefficient_function(STANDARD, as_matrix([[2, 3], [5, 8]]), v, phi)
    assert set(generic.characters()) <= {(-2,), (0,), (2,)}


def test_plain_mode_tracks_the_translation():
    g = as_matrix([[2, 3], [5, 8]])
    v, phi = (Fraction(1), Fraction(1)), (Fraction(1), Fraction(0))
    f = coefficient_function(STANDARD, g, v, phi, mode="plain")
    for t in default_omega(STANDARD, 2):
        image = matvec(matmul(g, t.matrix()), v)
        assert f.evaluate(t) == sum((a * x for a, x in zip(phi, image)), Fraction(0))


def test_project_k_examples():
    C = coefficient_module(STANDARD)
    assert project_k(C, LaurentPolynomial.constant(Fraction(4, 9), 1, P)) == Fraction(4, 9)
    assert project_k(C, LaurentPolynomial.monomial((2,), 5, P)) == 0
    with pytest.raises(DomainError):
        project_k(C, LaurentPolynomial.monomial((1,), 5, P))


@given(sl2_words(P), vectors(2), vectors(2), vectors(4), vectors(4))
@settings(max_examples=200, deadline=None)
def test_reynolds_identity_holds_exactly(y, v, phi, v4, phi4):
    assert reynolds_identity_check(STANDARD, y, v, phi)
    assert reynolds_identity_check(ADJOINT, y, v4, phi4)


@given(sl2_words(P), vectors(2), vectors(2), st.integers(-3, 3))
@settings(deadline=None)
def test_projected_coefficient_is_torus_conjugation_invariant(y, v, phi, j):
    W = weight_decompose(STANDARD)
    omega = diagonal([Fraction(P) ** j, Fraction(P) ** -j])
    conjugated = matmul(matmul(omega, y), inverse(omega))

    def value(g):
        projected = project_z(W, rho(STANDARD, g))
        return sum((phi[a] * projected[a][b] * v[b] for a in range(2) for b in range(2)), Fraction(0))

    assert value(conjugated) == value(y)


def test_check_star_examples():
    C = coefficient_module(STANDARD)
    assert not check_star(OmegaSet.from_exponents([[0]], P), C).holds
    omega = OmegaSet.from_exponents([[j] for j in range(len(C))], P)
    result = check_star(omega, C)
    assert result.holds and len(result.basis_indices) == len(C)
    assert check_star(omega.subset(result.basis_indices), C).holds


def test_default_omega_satisfies_star():
    for spec in (STANDARD, ADJOINT, SYM3):
        C = coefficient_module(spec)
        omega = default_omega(spec)
        assert len(omega) >= len(C)
        assert check_star(omega, C).holds


def test_check_star_star():
    report = check_star_star(STANDARD)
    assert report.holds and set(report.complement_weights) == {(-2,), (2,)}
    assert check_star_star(ADJOINT).holds
    trivial = check_star_star(RepSpec(1, "standard", P))
    assert trivial.holds and trivial.trivial_torus


def test_generating_family_contains_constants_and_coordinates():
    family = generating_family(STANDARD)
    assert MatrixFunction.constant(1, 2, P) in family
    assert MatrixFunction.entry(1, 1, 2, P) in family
    assert all(f == f.normal_form() for f in family)
