"""Classification of general double points: prediction, randomized verification, certificates.

A random witness with defect 0 proves the general configuration is AH, because
specializing points can only lower ranks.  Deficiency is never inferred from a
rank shortfall; it is only reported when one of the three certificate families
below exhibits more forms than the dimension count allows.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from . import linalg
from .configurations import FatPointConfig, coordinate_points, random_general, rational_normal_curve_points
from .errors import RangeError, RetryExhausted
from .fields import DEFAULT_FIELD, QQ, Field, binomial, derive_seed
from .interpolation import build_matrix, hilbert_function, ideal_slice
from .monomials import basis_index, enumerate_basis, multi_index_str

DEFAULT_SEED = 0xA11CE
DEFAULT_TRIALS = 3

D2_STAR = "D2Star"
D4_QUADRIC_SQUARE = "D4QuadricSquare"
D3_N4_CUBIC = "D3N4Cubic"

SWEEP_COLUMNS = ("n", "d", "r", "predicted", "observed", "defect", "expected", "H", "witness_seed", "trials", "field_prime")


# Predicted classification


@dataclass(frozen=True)
class Prediction:
    kind: str  # "AH" or "Exceptional"
    family: Optional[str] = None

    @property
    def is_exceptional(self) -> bool:
        return self.kind == "Exceptional"

    def label(self) -> str:
        return f"Exceptional({self.family})" if self.family else "AH"


def exceptional_family(n: int, d: int, r: int) -> Optional[str]:
    if d == 2 and 2 <= r <= n:
        return D2_STAR
    if d == 3 and n == 4 and r == 7:
        return D3_N4_CUBIC
    if d == 4 and 2 <= n <= 4 and r == binomial(n + 2, 2) - 1:
        return D4_QUADRIC_SQUARE
    return None


def predicted_classification(n: int, d: int, r: int) -> Prediction:
    if n < 1 or d < 1 or r < 1:
        raise RangeError("need n, d, r >= 1")
    family = exceptional_family(n, d, r)
    return Prediction("Exceptional", family) if family else Prediction("AH")


def is_predicted_ah(n: int, d: int, r: int) -> bool:
    return exceptional_family(n, d, r) is None


def expected_ideal_dim(n: int, d: int, r: int) -> int:
    return max(0, binomial(n + d, n) - r * (n + 1))


# A tiny polynomial evaluator for certificates.  Polynomials are dicts
# {exponent tuple: coefficient} with coefficients in the given field.


def poly_from_terms(terms: Iterable, field: Field) -> dict:
    out = {}
    for coeff, alpha in terms:
        c = field.add(out.get(tuple(alpha), field.zero), field(coeff))
        if c == 0:
            out.pop(tuple(alpha), None)
        else:
            out[tuple(alpha)] = c
    return out


def poly_add(f: dict, g: dict, field: Field) -> dict:
    return poly_from_terms([(c, a) for a, c in f.items()] + [(c, a) for a, c in g.items()], field)


def poly_scale(f: dict, c, field: Field) -> dict:
    return poly_from_terms([(field.mul(c, v), a) for a, v in f.items()], field)


def poly_mul(f: dict, g: dict, field: Field) -> dict:
    terms = []
    for a, u in f.items():
        for b, v in g.items():
            terms.append((field.mul(u, v), tuple(x + y for x, y in zip(a, b))))
    return poly_from_terms(terms, field)


def poly_diff(f: dict, j: int, field: Field) -> dict:
    terms = []
    for a, c in f.items():
        if a[j]:
            b = list(a)
            b[j] -= 1
            terms.append((field.mul(c, field(a[j])), tuple(b)))
    return poly_from_terms(terms, field)


def poly_eval(f: dict, point, field: Field):
    acc = field.zero
    for a, c in f.items():
        term = c
        for x, e in zip(point, a):
            if e:
                term = field.mul(term, pow(x, e) if field.is_rational else pow(x, e, field.p))
        acc = field.add(acc, term)
    return acc


def variable(n: int, j: int, field: Field) -> dict:
    return {tuple(1 if i == j else 0 for i in range(n + 1)): field.one}


def det3(m, field: Field) -> dict:
    """Cofactor expansion of a 3x3 matrix of polynomials."""
    total = {}
    for j, sign in ((0, 1), (1, -1), (2, 1)):
        a, b = [c for c in range(3) if c != j]
        minor = poly_add(
            poly_mul(m[1][a], m[2][b], field),
            poly_scale(poly_mul(m[1][b], m[2][a], field), field(-1), field),
            field,
        )
        total = poly_add(total, poly_scale(poly_mul(m[0][j], minor, field), field(sign), field), field)
    return total


def poly_to_vector(f: dict, n: int, d: int, field: Field) -> list:
    index = basis_index(n, d)
    vec = [field.zero] * len(index)
    for a, c in f.items():
        vec[index[a]] = c
    return vec


def vector_to_poly(vec, n: int, d: int, field: Field) -> dict:
    return poly_from_terms(zip(vec, enumerate_basis(n, d)), field)


def poly_str(f: dict, field: Field) -> str:
    if not f:
        return "0"
    parts = []
    for a in sorted(f, reverse=True):
        parts.append(f"{field.to_str(f[a])}*{multi_index_str(a)}")
    return " + ".join(parts)


# Certificates


def _c4_cubic(field: Field) -> dict:
    """x2^3 - 2 x1 x2 x3 + x0 x3^2 + x1^2 x4 - x0 x2 x4, singular along the rational normal quartic."""
    return poly_from_terms(
        [
            (1, (0, 0, 3, 0, 0)),
            (-2, (0, 1, 1, 1, 0)),
            (1, (1, 0, 0, 2, 0)),
            (1, (0, 2, 0, 0, 1)),
            (-1, (1, 0, 1, 0, 1)),
        ],
        field,
    )


def hankel_determinant(field: Field) -> dict:
    x = [variable(4, j, field) for j in range(5)]
    return det3([[x[i + j] for j in range(3)] for i in range(3)], field)


def hankel_identity_holds(field: Field = QQ) -> bool:
    """The cubic is minus the 3x3 Hankel determinant, as an identity of polynomials."""
    return poly_add(_c4_cubic(field), hankel_determinant(field), field) == {}


@dataclass(eq=False)
class Certificate:
    family: str
    config: FatPointConfig  # the double-point scheme whose degree-d ideal slice is exhibited
    d: int
    forms: list  # coefficient vectors over enumerate_basis(n, d)
    count_lower_bound: int
    expected_ideal_dim: int
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return self.config.n

    @property
    def r(self) -> int:
        return self.config.r

    def check(self) -> dict:
        """Re-verify everything from scratch; the values are booleans."""
        matrix = build_matrix(self.config, self.d)
        ncols = binomial(self.n + self.d, self.n)
        results = {
            "annihilated": all(matrix.annihilates(v) for v in self.forms),
            "independent": linalg.rank(self.forms, ncols, self.config.field) == self.count_lower_bound,
            "exceeds_expected": self.count_lower_bound > self.expected_ideal_dim,
        }
        if self.family == D3_N4_CUBIC:
            results["direct_vanishing"] = _cubic_singular_at(self.config)
            results["hankel_identity"] = hankel_identity_holds(QQ)
        return results

    def verify(self) -> bool:
        return all(self.check().values())

    def to_json(self) -> dict:
        field = self.config.field
        return {
            "schema": 1,
            "family": self.family,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "seed": self.seed,
            "field": field.describe(),
            "monomials": [list(a) for a in enumerate_basis(self.n, self.d)],
            "forms": [[field.to_str(c) for c in v] for v in self.forms],
            "count_lower_bound": self.count_lower_bound,
            "expected_ideal_dim": self.expected_ideal_dim,
            "config": self.config.to_json(),
            "checks": self.check(),
        }


def _cubic_singular_at(config: FatPointConfig) -> bool:
    field = config.field
    f = _c4_cubic(field)
    grads = [poly_diff(f, j, field) for j in range(5)]
    for pt in config.points:
        if poly_eval(f, pt.coords, field) != 0:
            return False
        if any(poly_eval(g, pt.coords, field) != 0 for g in grads):
            return False
    return True


def certificate_d2(n: int, r: int, field: Field = DEFAULT_FIELD) -> Certificate:
    """Quadrics in x_r..x_n are singular at the coordinate points e_0..e_(r-1)."""
    if not 2 <= r <= n:
        raise RangeError(f"the quadric family needs 2 <= r <= n, got r={r}, n={n}")
    config = coordinate_points(n, r, 2, field)
    forms = []
    for alpha in enumerate_basis(n, 2):
        if all(a == 0 for a in alpha[:r]):
            forms.append(poly_to_vector({alpha: field.one}, n, 2, field))
    return Certificate(D2_STAR, config, 2, forms, len(forms), expected_ideal_dim(n, 2, r))


def certificate_d4(n: int, r: Optional[int] = None, seed: int = DEFAULT_SEED, field: Field = DEFAULT_FIELD,
                   max_attempts: int = 10) -> Certificate:
    """Square of the quadric through C(n+2,2)-1 points is singular at each of them."""
    if not 2 <= n <= 4:
        raise RangeError(f"the quartic family needs 2 <= n <= 4, got n={n}")
    need = binomial(n + 2, 2) - 1
    if r is None:
        r = need
    if r != need:
        raise RangeError(f"the quartic family needs r = {need} for n = {n}")
    for attempt in range(max_attempts):
        s = derive_seed(seed, "d4", n, attempt)
        simple = random_general(n, r, 1, s, field)
        kernel = ideal_slice(simple, 2)
        if kernel.dimension != 1:
            continue
        q = vector_to_poly(kernel.basis_vectors[0], n, 2, field)
        quartic = poly_to_vector(poly_mul(q, q, field), n, 4, field)
        config = simple.with_multiplicity(2)
        return Certificate(D4_QUADRIC_SQUARE, config, 4, [quartic], 1, expected_ideal_dim(n, 4, r), seed=s)
    raise RetryExhausted(f"no seed among {max_attempts} gave a single quadric through {r} points")


def certificate_d3n4(seed: int = DEFAULT_SEED, field: Field = DEFAULT_FIELD) -> Certificate:
    config = rational_normal_curve_points(4, 7, 2, seed, field)
    form = poly_to_vector(_c4_cubic(field), 4, 3, field)
    return Certificate(D3_N4_CUBIC, config, 3, [form], 1, expected_ideal_dim(4, 3, 7), seed=seed)


def build_certificate(n: int, d: int, r: int, seed: int = DEFAULT_SEED, field: Field = DEFAULT_FIELD) -> Certificate:
    family = exceptional_family(n, d, r)
    if family == D2_STAR:
        return certificate_d2(n, r, field)
    if family == D4_QUADRIC_SQUARE:
        return certificate_d4(n, r, seed, field)
    if family == D3_N4_CUBIC:
        return certificate_d3n4(seed, field)
    raise RangeError(f"({n},{d},{r}) is not in an exceptional family")


# Verification


@dataclass(eq=False)
class AHVerdict:
    n: int
    d: int
    r: int
    predicted: Prediction
    observed: str  # "AH", "Deficient" or "Inconclusive"
    hilbert_value: int  # best rank seen
    expected: int
    trials: int  # trials actually run
    witness_seed: Optional[int] = None
    certificate: Optional[Certificate] = None
    field_prime: Optional[int] = None

    @property
    def defect(self) -> int:
        return self.expected - self.hilbert_value

    @property
    def agreement(self) -> bool:
        if self.predicted.is_exceptional:
            return self.observed == "Deficient"
        return self.observed == "AH"

    def observed_label(self) -> str:
        if self.observed == "Deficient" and self.certificate is not None:
            return f"Deficient({self.certificate.family})"
        return self.observed

    def csv_row(self) -> list:
        return [
            self.n, self.d, self.r, self.predicted.label(), self.observed_label(), self.defect, self.expected,
            self.hilbert_value, "" if self.witness_seed is None else self.witness_seed, self.trials,
            "rational" if self.field_prime is None else self.field_prime,
        ]

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "predicted": self.predicted.label(),
            "observed": self.observed_label(),
            "agreement": self.agreement,
            "H": self.hilbert_value,
            "expected": self.expected,
            "defect": self.defect,
            "witness_seed": self.witness_seed,
            "trials": self.trials,
            "field_prime": self.field_prime,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def trial_seed(seed: int, n: int, d: int, r: int, trial: int) -> int:
    return derive_seed(seed, n, d, r, trial)


def verify_ah(n: int, d: int, r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
              field: Field = DEFAULT_FIELD) -> AHVerdict:
    if trials < 1:
        raise ValueError("need at least one trial")
    prediction = predicted_classification(n, d, r)
    prime = None if field.is_rational else field.p
    best = -1
    expected = None
    for t in range(trials):
        s = trial_seed(seed, n, d, r, t)
        report = hilbert_function(random_general(n, r, 2, s, field), d)
        expected = report.expected
        best = max(best, report.hilbert_value)
        if report.is_AH:
            return AHVerdict(n, d, r, prediction, "AH", best, expected, t + 1, witness_seed=s, field_prime=prime)
    if prediction.is_exceptional:
        cert = build_certificate(n, d, r, seed, field)
        if cert.verify():
            return AHVerdict(n, d, r, prediction, "Deficient", best, expected, trials, certificate=cert,
                             field_prime=prime)
    return AHVerdict(n, d, r, prediction, "Inconclusive", best, expected, trials, field_prime=prime)


def replay_witness(verdict: AHVerdict, field: Field = DEFAULT_FIELD) -> bool:
    """Recompute the stored witness and confirm it has defect 0."""
    if verdict.witness_seed is None:
        return False
    return hilbert_function(random_general(verdict.n, verdict.r, 2, verdict.witness_seed, field), verdict.d).is_AH


# Sweeps


def pivotal_r_values(n: int, d: int) -> list:
    total = binomial(n + d, n)
    lo, hi = total // (n + 1), -(-total // (n + 1))
    return sorted({r for r in (lo, hi) if r >= 1})


def sweep_r_values(n: int, d: int, r_policy: str = "pivotal") -> list:
    if r_policy == "pivotal":
        return pivotal_r_values(n, d)
    if r_policy == "all":
        top = -(-binomial(n + d, n) // (n + 1)) + 2
        return list(range(1, top + 1))
    raise ValueError(f"unknown r policy {r_policy!r}")


def _verify_cell(args) -> AHVerdict:
    n, d, r, trials, seed, field = args
    return verify_ah(n, d, r, trials, seed, field)


def sweep(n_range: Iterable[int], d_range: Iterable[int], r_policy: str = "pivotal",
          trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED, field: Field = DEFAULT_FIELD,
          jobs: Optional[int] = None) -> list:
    """Verdicts for every cell, sorted by (n, d, r) whatever the scheduling."""
    cells = [
        (n, d, r, trials, seed, field)
        for n in n_range
        for d in d_range
        for r in sweep_r_values(n, d, r_policy)
    ]
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_verify_cell, cells, chunksize=4))
    else:
        verdicts = [_verify_cell(c) for c in cells]
    return sorted(verdicts, key=lambda v: (v.n, v.d, v.r))


def sweep_summary(verdicts: list) -> dict:
    counts = {"cells": len(verdicts), "AH": 0, "Deficient": 0, "Inconclusive": 0}
    for v in verdicts:
        counts[v.observed] += 1
    counts["disagreements"] = sum(not v.agreement for v in verdicts)
    return counts
