"""Regular functions on SL_n as polynomials in the matrix entries.

A ``MatrixFunction`` wraps a sympy ``Poly`` over QQ in the n^2 generators
x_ij (row-major). Functions are handled through representatives: det = 1 is
only imposed where a canonical form is required (``normal_form``), which the
stabilizer seminorm of a tree vertex needs.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from sympy import QQ, Matrix as SymMatrix, Poly, Rational, Symbol, reduced

from src.errors import DomainError
from src.padic.linalg import Matrix, shape
from src.padic.scalar import INFINITY, RationalLike, Valuation, check_prime, to_fraction, vp
from src.tropical.characters import diagonal_weight
from src.tropical.laurent import LaurentPolynomial

Monomial = tuple[int, ...]


@lru_cache(maxsize=None)
def matrix_symbols(n: int) -> tuple[Symbol, ...]:
    return tuple(Symbol(f"x_{i}_{j}") for i in range(1, n + 1) for j in range(1, n + 1))


def symbolic_matrix(n: int) -> SymMatrix:
    return SymMatrix(n, n, list(matrix_symbols(n)))


@lru_cache(maxsize=None)
def _determinant_poly(n: int) -> Poly:
    return Poly(symbolic_matrix(n).det(), *matrix_symbols(n), domain=QQ)


def _rational(x: Fraction) -> Rational:
    return Rational(x.numerator, x.denominator)


def _to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


class MatrixFunction:
    """Polynomial function x -> F(x) on n x n matrices"""

    def __init__(self, poly: Poly, n: int, prime: int):
        self.poly = poly
        self.n = n
        self.prime = check_prime(prime)

    @classmethod
    def from_expr(cls, expr, n: int, prime: int) -> "MatrixFunction":
        return cls(Poly(expr, *matrix_symbols(n), domain=QQ), n, prime)

    @classmethod
    def entry(cls, i: int, j: int, n: int, prime: int) -> "MatrixFunction":
        """The coordinate function x_ij, 1-based indices"""
        if not (1 <= i <= n and 1 <= j <= n):
            raise DomainError("index_range", f"entry ({i}, {j}) outside a {n}x{n} matrix")
        return cls.from_expr(matrix_symbols(n)[(i - 1) * n + (j - 1)], n, prime)

    @classmethod
    def constant(cls, c: RationalLike, n: int, prime: int) -> "MatrixFunction":
        return cls.from_expr(_rational(to_fraction(c)), n, prime)

    @classmethod
    def trace(cls, n: int, prime: int) -> "MatrixFunction":
        return cls.from_expr(symbolic_matrix(n).trace(), n, prime)

    @cached_property
    def terms(self) -> tuple[tuple[Monomial, Fraction], ...]:
        if self.poly.is_zero:
            return ()
        return tuple((monom, _to_fraction(c)) for monom, c in self.poly.terms())

    def is_zero(self) -> bool:
        return self.poly.is_zero

    def _check(self, other: "MatrixFunction") -> None:
        if other.n != self.n:
            raise DomainError("dimension_match", "functions on groups of different rank")
        if other.prime != self.prime:
            raise DomainError("same_prime", "functions over different primes")

    def __add__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.poly + other.poly, self.n, self.prime)

    def __sub__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.poly - other.poly, self.n, self.prime)

    def __mul__(self, other: "MatrixFunction") -> "MatrixFunction":
        self._check(other)
        return MatrixFunction(self.poly * other.poly, self.n, self.prime)

    def scale(self, c: RationalLike) -> "MatrixFunction":
        return MatrixFunction(self.poly * _rational(to_fraction(c)), self.n, self.prime)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFunction):
            return NotImplemented
        return self.n == other.n and self.prime == other.prime and self.poly == other.poly

    def __hash__(self) -> int:
        return hash((self.n, self.prime, self.terms))

    def __repr__(self) -> str:
        return f"MatrixFunction({self.poly.as_expr()}, n={self.n}, p={self.prime})"

    def evaluate(self, g: Matrix) -> Fraction:
        if shape(g) != (self.n, self.n):
            raise DomainError("dimension_match", f"evaluating a function on {self.n}x{self.n} matrices at {shape(g)}")
        flat = [x for row in g for x in row]
        total = Fraction(0)
        for monom, c in self.terms:
            value = c
            for x, e in zip(flat, monom):
                if e:
                    value *= x**e
            total += value
        return total

    def substitute(self, images: Sequence[Poly]) -> "MatrixFunction":
        """Replace every generator x_ij by the polynomial images[(i, j)]"""
        gens = matrix_symbols(self.n)
        result = Poly(0, *gens, domain=QQ)
        powers: dict[tuple[int, int], Poly] = {}
        for monom, c in self.poly.terms():
            term = Poly(QQ.to_sympy(c), *gens, domain=QQ)
            for k, e in enumerate(monom):
                if e:
                    if (k, e) not in powers:
                        powers[(k, e)] = images[k] ** e
                    term = term * powers[(k, e)]
            result = result + term
        return MatrixFunction(result, self.n, self.prime)

    def normal_form(self) -> "MatrixFunction":
        """Remainder modulo det - 1 under grlex (leading monomial x_11 x_22 ... x_nn)"""
        return self._normal_form

    @cached_property
    def _normal_form(self) -> "MatrixFunction":
        relation = _determinant_poly(self.n) - 1
        _, remainder = reduced(self.poly, [relation], *matrix_symbols(self.n), order="grlex", domain=QQ)
        return MatrixFunction(Poly(remainder, *matrix_symbols(self.n), domain=QQ), self.n, self.prime)


def _linear_images(g: Matrix, n: int, left: bool) -> list[Poly]:
    gens = matrix_symbols(n)
    x = [[gens[i * n + j] for j in range(n)] for i in range(n)]
    images = []
    for i in range(n):
        for j in range(n):
            if left:
                expr = sum(_rational(g[i][k]) * x[k][j] for k in range(n))
            else:
                expr = sum(x[i][k] * _rational(g[k][j]) for k in range(n))
            images.append(Poly(expr, *gens, domain=QQ))
    return images


def left_translate(F: MatrixFunction, g: Matrix) -> MatrixFunction:
    """x -> F(g x)"""
    if shape(g) != (F.n, F.n):
        raise DomainError("dimension_match", "translating element has the wrong size")
    return F.substitute(_linear_images(g, F.n, left=True))


def right_translate(F: MatrixFunction, g: Matrix) -> MatrixFunction:
    """x -> F(x g)"""
    if shape(g) != (F.n, F.n):
        raise DomainError("dimension_match", "translating element has the wrong size")
    return F.substitute(_linear_images(g, F.n, left=False))


def restrict_to_torus(F: MatrixFunction) -> LaurentPolynomial:
    """F(diag(t_1, ..., t_n)) written in the n - 1 free characters"""
    n = F.n
    diagonal_slots = {i * n + i for i in range(n)}
    terms = []
    for monom, c in F.terms:
        if any(e for k, e in enumerate(monom) if k not in diagonal_slots):
            continue
        terms.append((diagonal_weight([monom[i * n + i] for i in range(n)]), c))
    return LaurentPolynomial(tuple(terms), n - 1, F.prime)


def translated_torus_restriction(F: MatrixFunction, g: Matrix) -> LaurentPolynomial:
    """restrict_to_torus(left_translate(F, g)) without expanding the translate.

    (g diag(t))_ij = g_ij t_j, so every monomial of F contributes a single
    character given by its column degrees.
    """
    n = F.n
    if shape(g) != (n, n):
        raise DomainError("dimension_match", "translating element has the wrong size")
    flat = [x for row in g for x in row]
    terms = []
    for monom, c in F.terms:
        value = c
        columns = [0] * n
        for k, e in enumerate(monom):
            if e:
                value *= flat[k] ** e
                columns[k % n] += e
        if value != 0:
            terms.append((diagonal_weight(columns), value))
    return LaurentPolynomial(tuple(terms), n - 1, F.prime)


def vertex_seminorm(F: MatrixFunction, a: int, b: RationalLike) -> Valuation:
    """Valuation of the stabilizer Gauss seminorm of F at the tree vertex (a, b).

    The vertex is n_b diag(p^(a/2), p^(-a/2)) o with n_b = [[1, b], [0, 1]].
    F(n_b x) is reduced modulo det - 1 and every monomial is weighted by
    (a/2)(row-1 degree - row-2 degree), the valuation picked up by scaling the
    rows of x. Restricting to the torus instead gives a lower bound for the
    seminorm, i.e. a larger valuation.
    """
    if F.n != 2:
        raise DomainError("rank_two", "vertex seminorms are implemented on SL_2 only")
    b = to_fraction(b)
    shifted = left_translate(F, ((Fraction(1), b), (Fraction(0), Fraction(1)))) if b else F
    reduced_form = shifted.normal_form()
    half = Fraction(a, 2)
    return min(
        (vp(c, F.prime) + half * (m[0] + m[1] - m[2] - m[3]) for m, c in reduced_form.terms),
        default=INFINITY,
    )
