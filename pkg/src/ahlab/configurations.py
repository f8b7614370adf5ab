"""Fat-point configurations in P^n and the generators that produce them.

"General" points are seeded pseudo-random points over the coefficient field.
Each coordinate is drawn from a hash of (seed, point index, coordinate index,
attempt), so a configuration does not depend on generation order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

from .errors import DuplicatePoint, FieldTooSmall, RangeError
from .fields import DEFAULT_FIELD, Field, field_from_spec

MAX_REJECTIONS = 100


@dataclass(frozen=True)
class FatPoint:
    coords: tuple
    mult: int


@dataclass(frozen=True)
class HyperplaneData:
    """The linear form sum_j coefficients[j] * x_j."""

    coefficients: tuple

    def __post_init__(self) -> None:
        if not any(c != 0 for c in self.coefficients):
            raise ValueError("hyperplane needs a nonzero linear form")

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    def pivot(self) -> int:
        """Index of the first nonzero coefficient; that coordinate is eliminated on L."""
        return next(j for j, c in enumerate(self.coefficients) if c != 0)

    def evaluate(self, coords: Sequence, field: Field):
        acc = field.zero
        for c, x in zip(self.coefficients, coords):
            acc = field.add(acc, field.mul(field(c), x))
        return acc

    def contains(self, coords: Sequence, field: Field) -> bool:
        return self.evaluate(coords, field) == 0

    def restrict(self, coords: Sequence) -> tuple:
        """Coordinates of a point of L in P^(n-1).

        L is parametrised by v_j = e_j - (l_j / l_k) e_k for j != k (k the
        pivot), so a point of L has coordinates P_j, j != k, in that basis.
        """
        k = self.pivot()
        return tuple(x for j, x in enumerate(coords) if j != k)


def coordinate_hyperplane(n: int, j: Optional[int] = None) -> HyperplaneData:
    """The hyperplane x_j = 0 (default x_n = 0)."""
    j = n if j is None else j
    return HyperplaneData(tuple(1 if i == j else 0 for i in range(n + 1)))


def projective_key(coords: Sequence, field: Field) -> tuple:
    """Representative scaled so that the first nonzero coordinate is 1."""
    lead = next((x for x in coords if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    inv = field.inv(lead)
    return tuple(field.mul(x, inv) for x in coords)


@dataclass(frozen=True, eq=False)
class FatPointConfig:
    n: int
    points: tuple
    field: Field = DEFAULT_FIELD
    provenance: dict = dc_field(default_factory=dict)

    def __post_init__(self) -> None:
        seen = {}
        for i, pt in enumerate(self.points):
            if len(pt.coords) != self.n + 1:
                raise ValueError(f"point {i} has {len(pt.coords)} coordinates, expected {self.n + 1}")
            if pt.mult < 1:
                raise ValueError(f"point {i} has multiplicity {pt.mult}")
            key = projective_key(pt.coords, self.field)
            if key in seen:
                raise DuplicatePoint(f"points {seen[key]} and {i} coincide in P^{self.n}")
            seen[key] = i

    def __len__(self) -> int:
        return len(self.points)

    @property
    def r(self) -> int:
        return len(self.points)

    @property
    def multiplicities(self) -> list:
        return [pt.mult for pt in self.points]

    def with_points(self, points: Iterable[FatPoint], **provenance) -> "FatPointConfig":
        return FatPointConfig(self.n, tuple(points), self.field, provenance or dict(self.provenance))

    def with_multiplicity(self, m: int) -> "FatPointConfig":
        """Same support, every multiplicity replaced by ``m``."""
        return self.with_points(FatPoint(pt.coords, m) for pt in self.points)

    def without(self, index: int) -> "FatPointConfig":
        return self.with_points(pt for i, pt in enumerate(self.points) if i != index)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FatPointConfig):
            return NotImplemented
        return (self.n, self.points, self.field) == (other.n, other.points, other.field)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "field": self.field.describe(),
            "points": [
                {"coords": [self.field.to_str(x) for x in pt.coords], "mult": pt.mult}
                for pt in self.points
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FatPointConfig":
        field = field_from_spec(data.get("field", DEFAULT_FIELD.describe()))
        points = tuple(
            FatPoint(tuple(field(str(c)) for c in item["coords"]), int(item.get("mult", 1)))
            for item in data["points"]
        )
        return cls(int(data["n"]), points, field, {"generator": "json"})


def load_config(path: str) -> FatPointConfig:
    with open(path, encoding="utf-8") as fh:
        return FatPointConfig.from_json(json.load(fh))


def _draw(field: Field, tag: str, seed: int, i: int, j: int, attempt: int):
    return field.random_scalar(tag, seed, i, j, attempt)


def random_general(n: int, r: int, m: int, seed: int, field: Field = DEFAULT_FIELD) -> FatPointConfig:
    """r points [1 : a_1 : ... : a_n] with pseudo-random a_j, all of multiplicity m."""
    if r < 1:
        raise RangeError("need r >= 1")
    points = []
    seen = set()
    for i in range(r):
        for attempt in range(MAX_REJECTIONS):
            coords = (field.one,) + tuple(_draw(field, "general", seed, i, j, attempt) for j in range(1, n + 1))
            if coords not in seen:
                break
        else:
            raise FieldTooSmall(f"could not draw {r} distinct points in P^{n}")
        seen.add(coords)
        points.append(FatPoint(coords, m))
    prov = {"generator": "random_general", "n": n, "r": r, "m": m, "seed": seed}
    return FatPointConfig(n, tuple(points), field, prov)


def coordinate_points(n: int, r: int, m: int, field: Field = DEFAULT_FIELD) -> FatPointConfig:
    """The first r standard coordinate points e_0, ..., e_(r-1)."""
    if not 1 <= r <= n + 1:
        raise RangeError(f"coordinate points need 1 <= r <= n+1, got r={r}, n={n}")
    points = tuple(
        FatPoint(tuple(field.one if j == i else field.zero for j in range(n + 1)), m) for i in range(r)
    )
    return FatPointConfig(n, points, field, {"generator": "coordinate_points", "n": n, "r": r, "m": m})


def random_on_hyperplane(
    n: int, r: int, m: int, hyperplane: HyperplaneData, seed: int, field: Field = DEFAULT_FIELD
) -> FatPointConfig:
    """r pseudo-random points of the hyperplane, multiplicity m."""
    if r < 1:
        raise RangeError("need r >= 1")
    if hyperplane.n != n:
        raise ValueError("hyperplane lives in a different projective space")
    if n < 1:
        raise RangeError("a hyperplane of P^0 is empty")
    coeffs = [field(c) for c in hyperplane.coefficients]
    k = hyperplane.pivot()
    free = [j for j in range(n + 1) if j != k]
    inv_k = field.inv(coeffs[k])
    points = []
    seen = set()
    for i in range(r):
        for attempt in range(MAX_REJECTIONS):
            coords = [field.zero] * (n + 1)
            for pos, j in enumerate(free):
                coords[j] = field.one if pos == 0 else _draw(field, "hyperplane", seed, i, j, attempt)
            acc = field.zero
            for j in free:
                acc = field.add(acc, field.mul(coeffs[j], coords[j]))
            coords[k] = field.neg(field.mul(acc, inv_k))
            coords = tuple(coords)
            if coords not in seen:
                break
        else:
            raise FieldTooSmall(f"could not draw {r} distinct points on the hyperplane")
        seen.add(coords)
        points.append(FatPoint(coords, m))
    prov = {
        "generator": "random_on_hyperplane",
        "n": n,
        "r": r,
        "m": m,
        "hyperplane": [field.to_str(c) for c in coeffs],
        "seed": seed,
    }
    return FatPointConfig(n, tuple(points), field, prov)


def rational_normal_curve_points(n: int, r: int, m: int, seed: int, field: Field = DEFAULT_FIELD) -> FatPointConfig:
    """r points [1 : t : t^2 : ... : t^n] for distinct pseudo-random parameters t."""
    if r < 1:
        raise RangeError("need r >= 1")
    ts = []
    for i in range(r):
        for attempt in range(MAX_REJECTIONS):
            t = _draw(field, "rnc", seed, i, 0, attempt)
            if t not in ts:
                break
        else:
            raise FieldTooSmall(f"could not draw {r} distinct curve parameters")
        ts.append(t)
    points = tuple(FatPoint(curve_point(n, t, field), m) for t in ts)
    prov = {"generator": "rational_normal_curve_points", "n": n, "r": r, "m": m, "seed": seed}
    return FatPointConfig(n, points, field, prov)


def curve_point(n: int, t, field: Field) -> tuple:
    coords = [field.one]
    for _ in range(n):
        coords.append(field.mul(coords[-1], t))
    return tuple(coords)


def union(*configs: FatPointConfig) -> FatPointConfig:
    """Concatenate configurations; raises DuplicatePoint on a shared support point."""
    if not configs:
        raise ValueError("union of nothing")
    n, field = configs[0].n, configs[0].field
    for c in configs:
        if c.n != n or c.field != field:
            raise ValueError("cannot unite configurations from different spaces or fields")
    points = tuple(pt for c in configs for pt in c.points)
    prov = {"generator": "union", "parts": [c.provenance for c in configs]}
    return FatPointConfig(n, points, field, prov)


def empty_config(n: int, field: Field = DEFAULT_FIELD) -> FatPointConfig:
    return FatPointConfig(n, (), field, {"generator": "empty"})
