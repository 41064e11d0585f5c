"""Exact matrix helpers over Q with p-adic bookkeeping.

Matrices are tuples of row tuples of Fractions. Heavy operations (inverse,
rank, row echelon form) go through sympy's DomainMatrix over QQ; products
stay in plain Fractions because they sit on the hot paths of the sweeps.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.errors import DomainError
from src.padic.scalar import INFINITY, RationalLike, Valuation, check_bits, format_rational, parse_rational, to_fraction, vp

Matrix = tuple[tuple[Fraction, ...], ...]
Vec = tuple[Fraction, ...]


def as_matrix(rows: Iterable[Iterable[RationalLike]]) -> Matrix:
    matrix = tuple(tuple(to_fraction(x) for x in row) for row in rows)
    if matrix and len({len(row) for row in matrix}) != 1:
        raise DomainError("dimension_match", "ragged matrix rows")
    return matrix


def as_vector(entries: Iterable[RationalLike]) -> Vec:
    return tuple(to_fraction(x) for x in entries)


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), len(a[0]) if a else 0


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(rows: int, cols: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))


def diagonal(entries: Sequence[RationalLike]) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(to_fraction(entries[i]) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def elementary(n: int, i: int, j: int) -> Matrix:
    """E_ij with 0-based indices"""
    return tuple(tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DomainError("dimension_match", f"cannot multiply {shape(a)} by {shape(b)}")
    columns = tuple(zip(*b))
    product = tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns) for row in a)
    for row in product:
        for entry in row:
            check_bits(entry)
    return product


def matvec(a: Matrix, v: Sequence[Fraction]) -> Vec:
    if len(a[0]) != len(v):
        raise DomainError("dimension_match", f"cannot apply a {shape(a)} matrix to a vector of length {len(v)}")
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def add(a: Matrix, b: Matrix) -> Matrix:
    if shape(a) != shape(b):
        raise DomainError("dimension_match", f"cannot add {shape(a)} and {shape(b)}")
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scale(c: Fraction, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def _to_domain(a: Sequence[Sequence[Fraction]]) -> DomainMatrix:
    rows = [[QQ(x.numerator, x.denominator) for x in row] for row in a]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), QQ)


def _from_domain(dm: DomainMatrix) -> Matrix:
    return tuple(tuple(Fraction(int(x.p), int(x.q)) for x in row) for row in dm.to_Matrix().tolist())


def det(a: Matrix) -> Fraction:
    if len(a) == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    r = _to_domain(a).det()
    return Fraction(int(r.numerator), int(r.denominator))


def inverse(a: Matrix) -> Matrix:
    rows, cols = shape(a)
    if rows != cols:
        raise DomainError("square_matrix", f"cannot invert a {rows}x{cols} matrix")
    if rows == 2:
        d = det(a)
        if d == 0:
            raise DomainError("nonsingular", "matrix is singular")
        return ((a[1][1] / d, -a[0][1] / d), (-a[1][0] / d, a[0][0] / d))
    if det(a) == 0:
        raise DomainError("nonsingular", "matrix is singular")
    return _from_domain(_to_domain(a).inv())


def rank(a: Sequence[Sequence[Fraction]]) -> int:
    if not a or not a[0]:
        return 0
    return _to_domain(a).rank()


def independent_rows(a: Sequence[Sequence[Fraction]]) -> tuple[int, ...]:
    """Indices of a maximal set of linearly independent rows, earliest first"""
    if not a or not a[0]:
        return ()
    _, pivots = _to_domain(transpose(tuple(tuple(row) for row in a))).rref()
    return tuple(pivots)


def min_valuation(entries: Iterable[Fraction], p: int) -> Valuation:
    return min((vp(x, p) for x in entries), default=INFINITY)


def matrix_valuation(a: Matrix, p: int) -> Valuation:
    return min((min_valuation(row, p) for row in a), default=INFINITY)


def is_special_linear(a: Matrix) -> bool:
    return shape(a)[0] == shape(a)[1] and det(a) == 1


def matrix_to_json(a: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in a]


def matrix_from_json(rows: Sequence[Sequence[RationalLike]]) -> Matrix:
    return as_matrix([[parse_rational(x) for x in row] for row in rows])


class ZpRowLattice:
    """Z_(p)-lattice spanned by rational row vectors, kept in echelon form.

    Rows are inserted one at a time; elimination only uses multipliers of
    nonnegative valuation, so the stored rows always form a Z_(p)-basis of
    the span of everything inserted so far.
    """

    def __init__(self, width: int, p: int):
        self.width = width
        self.p = p
        self._rows: list[list[Fraction]] = []
        self._pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def basis(self) -> Matrix:
        return tuple(tuple(row) for row in self._rows)

    def insert(self, row: Sequence[Fraction]) -> None:
        current = list(row)
        if len(current) != self.width:
            raise DomainError("dimension_match", f"row of length {len(current)} in a lattice of width {self.width}")
        k = 0
        while True:
            leading = next((i for i, x in enumerate(current) if x != 0), None)
            if leading is None:
                return
            while k < len(self._pivots) and self._pivots[k] < leading:
                k += 1
            if k == len(self._pivots) or self._pivots[k] > leading:
                self._rows.insert(k, current)
                self._pivots.insert(k, leading)
                return
            pivot_row = self._rows[k]
            if vp(current[leading], self.p) < vp(pivot_row[leading], self.p):
                self._rows[k], current = current, pivot_row
                pivot_row = self._rows[k]
            factor = current[leading] / pivot_row[leading]
            current = [x - factor * y for x, y in zip(current, pivot_row)]
            k += 1

    def coordinates(self, row: Sequence[Fraction]) -> Vec | None:
        """Coordinates of ``row`` in the stored basis, or None outside its Q-span"""
        current = list(row)
        coords = [Fraction(0)] * len(self._rows)
        for k, col in enumerate(self._pivots):
            if current[col] == 0:
                continue
            factor = current[col] / self._rows[k][col]
            coords[k] = factor
            current = [x - factor * y for x, y in zip(current, self._rows[k])]
        if any(x != 0 for x in current):
            return None
        return tuple(coords)

    def dual_valuation(self, functional_row: Sequence[Fraction]) -> Valuation | None:
        """Largest s with the row in p^s times the lattice; None outside the span"""
        coords = self.coordinates(functional_row)
        if coords is None:
            return None
        return min_valuation(coords, self.p)
