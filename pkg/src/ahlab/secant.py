"""Secant varieties of Veronese varieties and the big Waring number.

Ranks here are affine (cone) dimensions; a projective dimension is the rank
minus one and only appears in reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Optional

from . import linalg
from .classifier import DEFAULT_SEED, DEFAULT_TRIALS, verify_ah
from .configurations import random_general
from .errors import CrossCheckMismatch, RangeError
from .fields import DEFAULT_FIELD, Field, binomial, derive_seed
from .interpolation import hilbert_value
from .monomials import enumerate_basis, evaluate_monomial


def veronese_embed(point, d: int, field: Field = DEFAULT_FIELD) -> list:
    """nu_d(P): every degree-d monomial evaluated at P, in basis order."""
    if not any(x != 0 for x in point):
        raise ValueError("the zero vector is not a projective point")
    n = len(point) - 1
    return [evaluate_monomial(alpha, point, field) for alpha in enumerate_basis(n, d)]


def _multinomial(k: int, exps) -> int:
    out = factorial(k)
    for e in exps:
        out //= factorial(e)
    return out


def tangent_rows(point, d: int, field: Field) -> list:
    """Coefficient vectors of l_P^(d-1) * x_j for j = 0..n, with l_P = sum P_i x_i."""
    n = len(point) - 1
    lower = d - 1
    rows = []
    for j in range(n + 1):
        row = []
        for alpha in enumerate_basis(n, d):
            if alpha[j] == 0:
                row.append(field.zero)
                continue
            beta = list(alpha)
            beta[j] -= 1
            coeff = field(_multinomial(lower, beta))
            row.append(field.mul(coeff, evaluate_monomial(beta, point, field)))
        rows.append(row)
    return rows


def terracini_span_rank(points, d: int, field: Field = DEFAULT_FIELD) -> int:
    """Rank of the span of the tangent spaces to the Veronese variety at the given points."""
    if d < 2:
        raise RangeError("tangent spans need d >= 2")
    if not points:
        return 0
    n = len(points[0]) - 1
    rows = [row for p in points for row in tangent_rows(p, d, field)]
    return linalg.rank(rows, binomial(n + d, n), field)


@dataclass(frozen=True)
class SecantReport:
    n: int
    d: int
    r: int
    actual_dim: int
    witness_seed: int

    @property
    def ambient_dim(self) -> int:
        return binomial(self.n + self.d, self.n) - 1

    @property
    def expected_dim(self) -> int:
        return min((self.n + 1) * self.r - 1, self.ambient_dim)

    @property
    def defect(self) -> int:
        return self.expected_dim - self.actual_dim

    @property
    def fills_ambient(self) -> bool:
        return self.actual_dim == self.ambient_dim

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "N": self.ambient_dim,
            "expected_dim": self.expected_dim,
            "actual_dim": self.actual_dim,
            "defect": self.defect,
            "fills_ambient": self.fills_ambient,
            "witness_seed": self.witness_seed,
        }


def secant_dimension(n: int, d: int, r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
                     field: Field = DEFAULT_FIELD) -> SecantReport:
    """dim sigma_r(V^n_d) from tangent spans, checked against the double-point Hilbert function."""
    if d < 2:
        raise RangeError("secant dimensions need d >= 2")
    best, best_seed = -1, None
    for t in range(trials):
        s = derive_seed(seed, "secant", n, d, r, t)
        config = random_general(n, r, 1, s, field)
        span = terracini_span_rank([pt.coords for pt in config.points], d, field)
        h = hilbert_value(config.with_multiplicity(2), d)
        if span != h:
            raise CrossCheckMismatch(f"tangent span rank {span} != Hilbert function {h} for seed {s}")
        if span > best:
            best, best_seed = span, s
    return SecantReport(n, d, r, best - 1, best_seed)


@dataclass(frozen=True)
class WaringReport:
    n: int
    d: int
    G: int
    witness_seed: Optional[int] = None

    @property
    def naive(self) -> int:
        return -(-binomial(self.n + self.d, self.n) // (self.n + 1))

    @property
    def exceptional_bump(self) -> int:
        return self.G - self.naive

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "d": self.d,
            "G": self.G,
            "naive": self.naive,
            "exceptional_bump": self.exceptional_bump,
            "witness_seed": self.witness_seed,
        }


def waring_G(n: int, d: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
             field: Field = DEFAULT_FIELD) -> WaringReport:
    """Least r for which r general double points impose C(n+d, n) conditions in degree d."""
    if n < 1 or d < 1:
        raise RangeError("need n, d >= 1")
    if d == 1:
        return WaringReport(n, d, 1)
    total = binomial(n + d, n)
    r = -(-total // (n + 1))
    while r <= total:
        verdict = verify_ah(n, d, r, trials, seed, field)
        if verdict.observed == "AH" and verdict.hilbert_value == total:
            return WaringReport(n, d, r, verdict.witness_seed)
        r += 1
    raise RangeError(f"no r <= {total} filled degree {d} in P^{n}; raise the trial count")
