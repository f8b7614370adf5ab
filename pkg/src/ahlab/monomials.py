"""Multi-indices, the degree-d monomial basis, and monomial derivatives.

Columns are ordered graded-lexicographically with x_0 largest, so for a fixed
degree the first column is x_0^d and the last is x_n^d.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .fields import Field, falling_factorial

MultiIndex = tuple


@lru_cache(maxsize=None)
def enumerate_basis(n: int, d: int) -> tuple:
    """All exponent vectors of length n+1 and degree d, x_0 > x_1 > ... > x_n."""
    if n < 0 or d < 0:
        raise ValueError("need n >= 0 and d >= 0")
    if n == 0:
        return ((d,),)
    out = []
    for a0 in range(d, -1, -1):
        for rest in enumerate_basis(n - 1, d - a0):
            out.append((a0,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def basis_index(n: int, d: int) -> dict:
    return {alpha: i for i, alpha in enumerate(enumerate_basis(n, d))}


@lru_cache(maxsize=None)
def derivative_orders(n: int, m: int, chart: int = 0) -> tuple:
    """Multi-indices beta with |beta| <= m-1 and beta[chart] = 0, by degree then lex.

    These are the rows for one m-fold point whose coordinate ``chart`` is
    nonzero: by Euler's formula the derivatives in x_chart are redundant, and
    the remaining C(n+m-1, n) are the affine derivatives in that chart.
    """
    out = []
    for k in range(m):
        out.extend(b for b in enumerate_basis(n, k) if b[chart] == 0)
    return tuple(out)


def derivative_coefficient(alpha: Sequence[int], beta: Sequence[int]) -> tuple:
    """Return (c, alpha - beta) with d^beta x^alpha = c x^(alpha-beta); (0, None) if beta is not <= alpha."""
    coeff = 1
    residual = []
    for a, b in zip(alpha, beta):
        if b > a:
            return 0, None
        coeff *= falling_factorial(a, b)
        residual.append(a - b)
    return coeff, tuple(residual)


def evaluate_monomial(alpha: Sequence[int], point: Sequence, field: Field):
    """prod point_j ** alpha_j in ``field``, with 0**0 == 1."""
    value = field.one
    for a, x in zip(alpha, point):
        if a:
            value = field.mul(value, pow(x, a) if field.is_rational else pow(x, a, field.p))
    return value


def monomial_values(point: Sequence, k: int, field: Field) -> list:
    """Values of every degree-k monomial at ``point``, in basis order."""
    n = len(point) - 1
    if field.is_rational:
        powers = [[x**e for e in range(k + 1)] for x in point]
        out = []
        for alpha in enumerate_basis(n, k):
            v = 1
            for j, a in enumerate(alpha):
                if a:
                    v *= powers[j][a]
            out.append(field(v))
        return out
    p = field.p
    powers = [[pow(x, e, p) for e in range(k + 1)] for x in point]
    out = []
    for alpha in enumerate_basis(n, k):
        v = 1
        for j, a in enumerate(alpha):
            if a:
                v = v * powers[j][a] % p
        out.append(v)
    return out


@lru_cache(maxsize=None)
def derivative_row_pattern(n: int, d: int, beta: MultiIndex) -> tuple:
    """For row beta: (column, coefficient, index of alpha-beta in the degree d-|beta| basis) over nonzero columns."""
    k = d - sum(beta)
    if k < 0:
        return ()
    lower = basis_index(n, k)
    out = []
    for col, alpha in enumerate(enumerate_basis(n, d)):
        coeff, residual = derivative_coefficient(alpha, beta)
        if coeff:
            out.append((col, coeff, lower[residual]))
    return tuple(out)


def multi_index_str(alpha: Sequence[int]) -> str:
    parts = []
    for j, a in enumerate(alpha):
        if a == 1:
            parts.append(f"x{j}")
        elif a > 1:
            parts.append(f"x{j}^{a}")
    return "*".join(parts) or "1"


def unit_exponent(n: int, j: int, times: int = 1) -> MultiIndex:
    return tuple(times if i == j else 0 for i in range(n + 1))
