"""Interpolation matrices of fat-point schemes and the Hilbert function they compute.

A form F = sum_alpha c_alpha x^alpha vanishes to order m at P exactly when
every derivative d^beta F with |beta| <= m-1 vanishes at P.  Each such pair
(P, beta) is one linear condition on the coefficients c_alpha; the rank of the
stacked conditions is H_{R/I_X}(d).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import linalg
from .configurations import FatPoint, FatPointConfig, HyperplaneData
from .errors import CharacteristicTooSmall, DecompositionError
from .fields import Field, binomial
from .monomials import derivative_orders, derivative_row_pattern, enumerate_basis, monomial_values


@dataclass(frozen=True, eq=False)
class InterpolationMatrix:
    n: int
    d: int
    field: Field
    row_labels: tuple  # (point index, beta)
    entries: list  # one list of field scalars per row

    @property
    def columns(self) -> tuple:
        return enumerate_basis(self.n, self.d)

    @property
    def shape(self) -> tuple:
        return len(self.entries), len(self.columns)

    def rank(self) -> int:
        return linalg.rank(self.entries, self.shape[1], self.field)

    def apply(self, vector) -> list:
        return linalg.mat_vec(self.entries, vector, self.field)

    def annihilates(self, vector) -> bool:
        """True when every row kills ``vector``, i.e. the form lies in [I_X]_d."""
        return all(x == 0 for x in self.apply(vector))


def _check_characteristic(field: Field, d: int) -> None:
    if not field.is_rational and field.p <= d:
        raise CharacteristicTooSmall(f"prime {field.p} must exceed the degree {d}")


def build_matrix(config: FatPointConfig, d: int) -> InterpolationMatrix:
    """Rows grouped by point; within a point, beta runs over |beta| <= m-1 in graded-lex order.

    Derivatives are taken in the affine variables of the chart given by the
    point's first nonzero coordinate, so a point of multiplicity m gives
    C(n+m-1, n) rows.
    """
    if d < 0:
        raise ValueError("degree must be non-negative")
    field = config.field
    _check_characteristic(field, d)
    n = config.n
    ncols = binomial(n + d, n)
    labels = []
    entries = []
    for i, pt in enumerate(config.points):
        cache = {}
        chart = next(j for j, x in enumerate(pt.coords) if x != 0)
        for beta in derivative_orders(n, pt.mult, chart):
            labels.append((i, beta))
            k = d - sum(beta)
            row = [field.zero] * ncols
            if k >= 0:
                if k not in cache:
                    cache[k] = monomial_values(pt.coords, k, field)
                vals = cache[k]
                if field.is_rational:
                    for col, coeff, low in derivative_row_pattern(n, d, beta):
                        row[col] = coeff * vals[low]
                else:
                    p = field.p
                    for col, coeff, low in derivative_row_pattern(n, d, beta):
                        row[col] = coeff * vals[low] % p
            entries.append(row)
    return InterpolationMatrix(n, d, field, tuple(labels), entries)


def rank(matrix: InterpolationMatrix) -> int:
    return matrix.rank()


def multiplicity(config: FatPointConfig) -> int:
    """e(R/I_X) = sum_i C(n + m_i - 1, n)."""
    return sum(binomial(config.n + pt.mult - 1, config.n) for pt in config.points)


@dataclass(frozen=True)
class HilbertReport:
    n: int
    d: int
    r: int
    mults: tuple
    hilbert_value: int
    ideal_dim: int
    multiplicity_e: int
    expected: int
    field: str
    seed: Optional[int] = None

    @property
    def defect(self) -> int:
        return self.expected - self.hilbert_value

    @property
    def is_AH(self) -> bool:
        return self.defect == 0

    @property
    def is_multiplicity_d_independent(self) -> bool:
        return self.hilbert_value == self.multiplicity_e

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "mults": list(self.mults),
            "H": self.hilbert_value,
            "idealDim": self.ideal_dim,
            "e": self.multiplicity_e,
            "expected": self.expected,
            "defect": self.defect,
            "isAH": self.is_AH,
            "dIndependent": self.is_multiplicity_d_independent,
            "field": self.field,
            "seed": self.seed,
        }


def hilbert_value(config: FatPointConfig, d: int) -> int:
    if not config.points:
        return 0
    return build_matrix(config, d).rank()


def hilbert_function(config: FatPointConfig, d: int) -> HilbertReport:
    h = hilbert_value(config, d)
    total = binomial(config.n + d, config.n)
    e = multiplicity(config)
    return HilbertReport(
        n=config.n,
        d=d,
        r=config.r,
        mults=tuple(config.multiplicities),
        hilbert_value=h,
        ideal_dim=total - h,
        multiplicity_e=e,
        expected=min(total, e),
        field=config.field.label(),
        seed=config.provenance.get("seed"),
    )


@dataclass(frozen=True)
class DegreeSlice:
    n: int
    d: int
    basis_vectors: list

    @property
    def dimension(self) -> int:
        return len(self.basis_vectors)


def ideal_slice(config: FatPointConfig, d: int) -> DegreeSlice:
    """A basis of [I_X]_d as coefficient vectors over the degree-d monomials."""
    ncols = binomial(config.n + d, config.n)
    field = config.field
    if not config.points:
        vectors = [[field.one if i == j else field.zero for j in range(ncols)] for i in range(ncols)]
        return DegreeSlice(config.n, d, vectors)
    matrix = build_matrix(config, d)
    return DegreeSlice(config.n, d, linalg.nullspace(matrix.entries, ncols, field))


@dataclass(frozen=True)
class CastelnuovoReport:
    d: int
    lhs: int
    residue_value: int
    restriction_value: int

    @property
    def rhs(self) -> int:
        return self.residue_value + self.restriction_value

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs

    @property
    def equality(self) -> bool:
        return self.lhs == self.rhs


def residue(config: FatPointConfig, hyperplane: HyperplaneData) -> FatPointConfig:
    """The scheme defined by I_X : l; a point on L loses one order, points off L are kept."""
    field = config.field
    points = []
    for pt in config.points:
        if hyperplane.contains(pt.coords, field):
            if pt.mult > 1:
                points.append(FatPoint(pt.coords, pt.mult - 1))
        else:
            points.append(pt)
    return config.with_points(points, generator="residue")


def restriction(config: FatPointConfig, hyperplane: HyperplaneData) -> FatPointConfig:
    """X intersected with L, written in coordinates of L = P^(n-1)."""
    field = config.field
    points = tuple(
        FatPoint(hyperplane.restrict(pt.coords), pt.mult)
        for pt in config.points
        if hyperplane.contains(pt.coords, field)
    )
    return FatPointConfig(config.n - 1, points, field, {"generator": "restriction"})


def castelnuovo_check(config: FatPointConfig, hyperplane: HyperplaneData, d: int) -> CastelnuovoReport:
    """Compare H_X(d) with H_residue(d-1) + H_(X cap L)(d)."""
    if d < 1:
        raise ValueError("need d >= 1")
    if hyperplane.n != config.n:
        raise DecompositionError("hyperplane and configuration live in different spaces")
    bad = [i for i, pt in enumerate(config.points) if pt.mult not in (1, 2)]
    if bad:
        raise DecompositionError(f"only multiplicities 1 and 2 are supported, points {bad} differ")
    lhs = hilbert_value(config, d)
    res = hilbert_value(residue(config, hyperplane), d - 1)
    rest = hilbert_value(restriction(config, hyperplane), d)
    return CastelnuovoReport(d, lhs, res, rest)


def hyperplane_condition(hilbert_t: int, hilbert_t_minus_1: int, n: int, t: int, u: int) -> bool:
    """Can u simple points on a hyperplane raise H(t) by exactly u?  Tests H(t) + u <= H(t-1) + C(n+t-1, t)."""
    return hilbert_t + u <= hilbert_t_minus_1 + binomial(n + t - 1, t)
