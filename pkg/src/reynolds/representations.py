"""Finite-dimensional representations of SL_n and the adjoint action on gl(V).

Supported tags: ``standard`` (V = Q_p^n), ``adjoint`` (gl_n under
conjugation, which contains sl_n) and ``sym`` (Sym^d of the standard
representation of SL_2). Basis vectors are weight vectors for the diagonal
torus; their weights are returned by ``rho_weights``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Literal, Sequence

from src.errors import DomainError
from src.padic.linalg import Matrix, as_matrix, inverse, matmul, shape
from src.padic.scalar import check_prime
from src.tropical.characters import Character, diagonal_weight, standard_weight
from src.tropical.matrix_functions import MatrixFunction, symbolic_matrix

RepTag = Literal["standard", "adjoint", "sym"]


@dataclass(frozen=True)
class RepSpec:
    n: int
    tag: RepTag
    prime: int
    degree: int = 1

    def __post_init__(self) -> None:
        check_prime(self.prime)
        if self.n < 1:
            raise DomainError("positive_rank", f"SL_{self.n} is not a group of matrices")
        if self.tag not in ("standard", "adjoint", "sym"):
            raise DomainError("rep_tag", f"unknown representation tag {self.tag!r}")
        if self.tag == "sym" and (self.n != 2 or self.degree < 1):
            raise DomainError("rep_tag", "symmetric powers are implemented for SL_2 with degree >= 1")

    @property
    def dimension(self) -> int:
        if self.tag == "standard":
            return self.n
        if self.tag == "adjoint":
            return self.n * self.n
        return self.degree + 1

    @property
    def rank(self) -> int:
        return self.n - 1

    def to_json(self) -> dict:
        record = {"n": self.n, "tag": self.tag, "p": self.prime, "dimension": self.dimension}
        if self.tag == "sym":
            record["degree"] = self.degree
        return record


def _binomial_row(u: Any, w: Any, power: int) -> list[Any]:
    """Coefficients of e1^(power-i) e2^i in (u e1 + w e2)^power"""
    return [math.comb(power, i) * u ** (power - i) * w**i for i in range(power + 1)]


def _convolve(left: list[Any], right: list[Any]) -> list[Any]:
    out: list[Any] = [0] * (len(left) + len(right) - 1)
    for i, x in enumerate(left):
        for j, y in enumerate(right):
            out[i + j] = out[i + j] + x * y
    return out


def _rho_entries(spec: RepSpec, g: Sequence[Sequence[Any]], g_inv: Sequence[Sequence[Any]]) -> list[list[Any]]:
    """rho(g) using ring operations only, so it serves rationals and symbols alike"""
    n = spec.n
    if spec.tag == "standard":
        return [list(row) for row in g]
    if spec.tag == "adjoint":
        # column (i, j) is the image of E_ij, i.e. the matrix g E_ij g^-1
        return [
            [g[k][i] * g_inv[j][l] for i in range(n) for j in range(n)]
            for k in range(n)
            for l in range(n)
        ]
    d = spec.degree
    columns = []
    for k in range(d + 1):
        first = _binomial_row(g[0][0], g[1][0], d - k)
        second = _binomial_row(g[0][1], g[1][1], k)
        columns.append(_convolve(first, second))
    return [[columns[k][i] for k in range(d + 1)] for i in range(d + 1)]


def rho(spec: RepSpec, g: Matrix) -> Matrix:
    if shape(g) != (spec.n, spec.n):
        raise DomainError("dimension_match", f"a {shape(g)} matrix is not an element of SL_{spec.n}")
    g_inv = inverse(g) if spec.tag == "adjoint" else g
    return as_matrix(_rho_entries(spec, g, g_inv))


def rho_inverse(spec: RepSpec, g: Matrix) -> Matrix:
    return rho(spec, inverse(g))


@lru_cache(maxsize=None)
def symbolic_rho(spec: RepSpec) -> tuple[tuple[MatrixFunction, ...], ...]:
    """rho(X) as polynomial functions of the entries of X in SL_n"""
    x = symbolic_matrix(spec.n)
    x_inv = x.adjugate() if spec.tag == "adjoint" else x
    grid = [[x[i, j] for j in range(spec.n)] for i in range(spec.n)]
    inv_grid = [[x_inv[i, j] for j in range(spec.n)] for i in range(spec.n)]
    entries = _rho_entries(spec, grid, inv_grid)
    return tuple(tuple(MatrixFunction.from_expr(e, spec.n, spec.prime) for e in row) for row in entries)


@lru_cache(maxsize=None)
def rho_weights(spec: RepSpec) -> tuple[Character, ...]:
    """Torus weight of each basis vector of V"""
    n = spec.n
    if spec.tag == "standard":
        return tuple(standard_weight(i, n) for i in range(n))
    if spec.tag == "adjoint":
        return tuple(
            diagonal_weight([int(m == k) - int(m == l) for m in range(n)]) for k in range(n) for l in range(n)
        )
    return tuple((spec.degree - 2 * k,) for k in range(spec.degree + 1))


def adjoint_action(spec: RepSpec, g: Matrix, e: Matrix) -> Matrix:
    """Ad_rho(g)(e) = rho(g) e rho(g)^-1"""
    m = spec.dimension
    if shape(e) != (m, m):
        raise DomainError("dimension_match", f"endomorphism of shape {shape(e)} for a representation of dimension {m}")
    return matmul(matmul(rho(spec, g), e), rho_inverse(spec, g))
