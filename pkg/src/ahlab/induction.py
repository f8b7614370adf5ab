"""Numeric bookkeeping of the Horace induction and its certificate trees.

A tree node claims "r general double points of P^n are AH in degree d".  Its
children are the smaller claims the node's argument relies on:

* ``Core``: the differential Horace split with (q, eps).  Children are
  q points of a hyperplane in degree d, r - q points in degree d - 1 and
  r - q - eps points in degree d - 2.
* ``Terracini``: q double points moved to a hyperplane.  Children are
  q double points of P^(n-1) in degree d and a mixed leaf of r - q double
  points plus q simple points on the hyperplane in degree d - 1.
* ``Reduce``: r is replaced by a value t on the same side of the dimension
  count, since a subset of independent points is independent and a superset
  of a filling set still fills.
* ``All``: several values of r are needed for one (n, d).
* ``Base``: a cell settled by a named base lemma and a rank-checked witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .classifier import DEFAULT_SEED, DEFAULT_TRIALS, is_predicted_ah, pivotal_r_values, verify_ah
from .configurations import coordinate_hyperplane, random_general, random_on_hyperplane, union
from .errors import DuplicatePoint, ExpansionStuck, NegativeDelta, RangeError
from .fields import DEFAULT_FIELD, Field, binomial, derive_seed
from .interpolation import hilbert_function

CORE = "Core"
TERRACINI = "Terracini"
REDUCE = "Reduce"
ALL = "All"
BASE = "Base"

EDGE_ORDER = ("(i) hyperplane", "(ii) degree-1", "(iii) degree-2", "Terracini-1", "Terracini-2", "reduce")

# Cells computed directly rather than by induction.
DIRECT_CELLS = frozenset({(5, 4, 21), (7, 4, 41), (7, 4, 42)})

# Base lemmas, in the order they are tried.  Each maps a cell to True when it applies.
BASE_LEMMAS = (
    ("degree-one", lambda n, d, r: d == 1),
    ("single-point", lambda n, d, r: r == 1),
    ("projective-line", lambda n, d, r: n == 1),
    ("quadrics", lambda n, d, r: d == 2),
    ("projective-plane", lambda n, d, r: n == 2),
    ("cubics", lambda n, d, r: d == 3),
    ("direct-computation", lambda n, d, r: (n, d, r) in DIRECT_CELLS),
)
MIXED_LEMMA = "hyperplane-points"


@dataclass(frozen=True)
class HoraceSplit:
    n: int
    d: int
    r: int
    delta: int
    q: int
    epsilon: int

    @property
    def remainder_points(self) -> int:
        return self.r - self.q - self.epsilon

    def to_json(self) -> dict:
        return {"delta": self.delta, "q": self.q, "epsilon": self.epsilon}


def horace_split(n: int, d: int, r: int) -> HoraceSplit:
    """n q + eps = r (n+1) - C(n+d-1, n) with 0 <= eps < n."""
    if n < 2 or d < 1 or r < 1:
        raise RangeError("the split needs n >= 2, d >= 1, r >= 1")
    delta = r * (n + 1) - binomial(n + d - 1, n)
    if delta < 0:
        raise NegativeDelta(f"r(n+1) = {r * (n + 1)} is below C(n+d-1, n) = {binomial(n + d - 1, n)}")
    q, eps = divmod(delta, n)
    return HoraceSplit(n, d, r, delta, q, eps)


@dataclass(frozen=True)
class NumericReport:
    hyperplane_room: bool  # n eps + q <= C(n+d-2, n-1)
    remainder_fills: bool  # C(n+d-2, n) <= (r-q-eps)(n+1)
    remainder_large: Optional[bool]  # r-q-eps >= n+1; only asserted for d = 4, n >= 8
    q_at_least_eps: bool

    @property
    def all_hold(self) -> bool:
        return self.hyperplane_room and self.remainder_fills and self.remainder_large is not False and self.q_at_least_eps

    def as_tuple(self) -> tuple:
        return self.hyperplane_room, self.remainder_fills, self.remainder_large, self.q_at_least_eps


def lemma_numeric_check(n: int, d: int, r: int, q: int, epsilon: int) -> NumericReport:
    rest = r - q - epsilon
    large = rest >= n + 1 if (d == 4 and n >= 8) else None
    return NumericReport(
        n * epsilon + q <= binomial(n + d - 2, n - 1),
        binomial(n + d - 2, n) <= rest * (n + 1),
        large,
        q >= epsilon,
    )


def terracini_gate(n: int, d: int, r: int, q: int) -> str:
    if not r >= q >= 1:
        raise RangeError("the gate needs r >= q >= 1")
    low = r * (n + 1) - binomial(d + n - 1, n)
    high = binomial(d + n - 1, n - 1)
    if low <= q * n <= high:
        return "gate1"
    if high <= q * n <= low:
        return "gate2"
    return "fail"


# Tables of splits at the pivotal r values

TABLE_COLUMNS = ("n", "r", "delta", "q", "epsilon", "r-q-epsilon")

REFERENCE_TABLES = {
    4: (
        (2, 5, 5, 2, 1, 2),
        (3, 8, 12, 4, 0, 4),
        (3, 9, 16, 5, 1, 3),
        (4, 14, 35, 8, 3, 3),
        (5, 21, 70, 14, 0, 7),
        (6, 30, 126, 21, 0, 9),
        (7, 41, 208, 29, 5, 7),
        (7, 42, 216, 30, 6, 6),
        (8, 55, 330, 41, 2, 12),
        (9, 71, 490, 54, 4, 13),
        (9, 72, 500, 55, 5, 12),
    ),
    5: (
        (2, 7, 6, 3, 0, 4),
        (3, 14, 21, 7, 0, 7),
        (4, 25, 55, 13, 3, 9),
        (4, 26, 60, 15, 0, 11),
        (5, 42, 126, 25, 1, 16),
        (6, 66, 252, 42, 0, 24),
        (7, 99, 462, 66, 0, 33),
    ),
}


def reproduce_tables(d: int) -> list:
    """Rows (n, r, delta, q, eps, r-q-eps) for the n range of the reference table."""
    if d not in REFERENCE_TABLES:
        raise RangeError("reference tables exist for d = 4 and d = 5")
    ns = sorted({row[0] for row in REFERENCE_TABLES[d]})
    rows = []
    for n in ns:
        for r in pivotal_r_values(n, d):
            s = horace_split(n, d, r)
            rows.append((n, r, s.delta, s.q, s.epsilon, s.remainder_points))
    return rows


def render_table(rows) -> str:
    lines = ["\t".join(TABLE_COLUMNS)]
    lines.extend("\t".join(str(x) for x in row) for row in rows)
    return "\n".join(lines) + "\n"


def tables_match(d: int) -> bool:
    return render_table(reproduce_tables(d)) == render_table(REFERENCE_TABLES[d])


# Trees


@dataclass(eq=False)
class InductionNode:
    kind: str
    n: int
    d: int
    r: int
    split: Optional[HoraceSplit] = None
    gate: Optional[str] = None
    q: Optional[int] = None
    simple_points: int = 0  # simple points on x_n = 0, mixed leaves only
    children: list = dc_field(default_factory=list)  # [(edge label, InductionNode)]
    lemma: Optional[str] = None
    witness_seed: Optional[int] = None

    @property
    def cell(self) -> tuple:
        return self.n, self.d, self.r

    def child(self, label: str) -> "InductionNode":
        return next(node for edge, node in self.children if edge == label)

    def walk(self):
        yield self
        for _, node in self.children:
            yield from node.walk()

    def leaves(self) -> list:
        return [node for node in self.walk() if node.kind == BASE]

    def to_json(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "d": self.d,
            "r": self.r,
            "split": None if self.split is None else self.split.to_json(),
            "gate": self.gate,
            "children": [dict(node.to_json(), edge=edge) for edge, node in self.children],
            "leaf": None if self.kind != BASE else {"lemma": self.lemma, "witness_seed": self.witness_seed},
        }
        if self.q is not None:
            out["q"] = self.q
        if self.simple_points:
            out["simple_points"] = self.simple_points
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, data: dict) -> "InductionNode":
        split = None
        if data.get("split"):
            s = data["split"]
            split = HoraceSplit(data["n"], data["d"], data["r"], s["delta"], s["q"], s["epsilon"])
        leaf = data.get("leaf") or {}
        return cls(
            kind=data["kind"],
            n=data["n"],
            d=data["d"],
            r=data["r"],
            split=split,
            gate=data.get("gate"),
            q=data.get("q"),
            simple_points=data.get("simple_points", 0),
            children=[(c["edge"], cls.from_json(c)) for c in data.get("children", [])],
            lemma=leaf.get("lemma"),
            witness_seed=leaf.get("witness_seed"),
        )


def base_lemma(n: int, d: int, r: int) -> Optional[str]:
    for name, applies in BASE_LEMMAS:
        if applies(n, d, r):
            return name
    return None


def exceptional_r(n: int, d: int) -> list:
    return [r for r in range(1, binomial(n + d, n) + 2) if not is_predicted_ah(n, d, r)]


def required_r_values(n: int, d: int) -> list:
    """Values of r that settle every r for (n, d).

    Normally the two pivotal values.  When a pivotal value is exceptional its
    neighbours take its place.
    """
    if d == 2:
        return [1, n + 1]
    out = set()
    for r in pivotal_r_values(n, d):
        if is_predicted_ah(n, d, r):
            out.add(r)
        else:
            out.update(t for t in (r - 1, r + 1) if t >= 1)
    return sorted(out)


def _reduction_target(n: int, d: int, r: int) -> Optional[int]:
    total = binomial(n + d, n)
    required = required_r_values(n, d)
    if r * (n + 1) <= total:
        fits = [t for t in required if t >= r and t * (n + 1) <= total]
        return min(fits) if fits else None
    fills = [t for t in required if t <= r and t * (n + 1) >= total]
    return max(fills) if fills else None


def _uses_core(n: int, d: int) -> bool:
    # Degree four in P^3 and P^4 goes through the hyperplane argument instead.
    return d >= 5 or (d == 4 and n >= 5)


class _Builder:
    def __init__(self, trials: int, seed: int, field: Field):
        self.trials = trials
        self.seed = seed
        self.field = field
        self.cache = {}

    def leaf(self, n: int, d: int, r: int, lemma: str) -> InductionNode:
        verdict = verify_ah(n, d, r, self.trials, self.seed, self.field)
        return InductionNode(BASE, n, d, r, lemma=lemma, witness_seed=verdict.witness_seed)

    def mixed_leaf(self, n: int, d: int, doubles: int, simples: int) -> InductionNode:
        ok, seed = verify_mixed(n, d, doubles, simples, self.trials, self.seed, self.field)
        return InductionNode(BASE, n, d, doubles, simple_points=simples, lemma=MIXED_LEMMA,
                             witness_seed=seed if ok else None)

    def expand(self, n: int, d: int, r: int) -> InductionNode:
        key = (n, d, r)
        if key not in self.cache:
            self.cache[key] = self._expand(n, d, r)
        return self.cache[key]

    def _expand(self, n: int, d: int, r: int) -> InductionNode:
        if not is_predicted_ah(n, d, r):
            raise ExpansionStuck(f"({n},{d},{r}) is an exceptional cell")
        lemma = base_lemma(n, d, r)
        if lemma:
            return self.leaf(n, d, r, lemma)
        if r not in required_r_values(n, d):
            target = _reduction_target(n, d, r)
            if target is None:
                raise ExpansionStuck(f"no reduction for ({n},{d},{r})")
            return InductionNode(REDUCE, n, d, r, children=[("reduce", self.expand(n, d, target))])
        if _uses_core(n, d) and r in pivotal_r_values(n, d):
            s = horace_split(n, d, r)
            cells = [(n - 1, d, s.q), (n, d - 1, s.r - s.q), (n, d - 2, s.remainder_points)]
            if s.q >= 1 and s.remainder_points >= 1 and all(is_predicted_ah(*c) for c in cells):
                labels = EDGE_ORDER[:3]
                children = [(label, self.expand(*c)) for label, c in zip(labels, cells)]
                return InductionNode(CORE, n, d, r, split=s, q=s.q, children=children)
        for q in range(1, r + 1):
            gate = terracini_gate(n, d, r, q)
            if gate == "fail" or not is_predicted_ah(n - 1, d, q):
                continue
            children = [
                ("Terracini-1", self.expand(n - 1, d, q)),
                ("Terracini-2", self.mixed_leaf(n, d - 1, r - q, q)),
            ]
            return InductionNode(TERRACINI, n, d, r, gate=gate, q=q, children=children)
        raise ExpansionStuck(f"neither split nor gate applies to ({n},{d},{r})")


def expand(n: int, d: int, r: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
           field: Field = DEFAULT_FIELD) -> InductionNode:
    return _Builder(trials, seed, field).expand(n, d, r)


def build_tree(n: int, d: int, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
               field: Field = DEFAULT_FIELD) -> InductionNode:
    builder = _Builder(trials, seed, field)
    rs = required_r_values(n, d)
    if len(rs) == 1:
        return builder.expand(n, d, rs[0])
    children = [(f"r={r}", builder.expand(n, d, r)) for r in rs]
    return InductionNode(ALL, n, d, rs[0], children=children)


def mixed_config(n: int, doubles: int, simples: int, seed: int, field: Field = DEFAULT_FIELD):
    parts = []
    if doubles:
        parts.append(random_general(n, doubles, 2, derive_seed(seed, "doubles"), field))
    if simples:
        hyperplane = coordinate_hyperplane(n)
        parts.append(random_on_hyperplane(n, simples, 1, hyperplane, derive_seed(seed, "simples"), field))
    return union(*parts)


def verify_mixed(n: int, d: int, doubles: int, simples: int, trials: int = DEFAULT_TRIALS,
                 seed: int = DEFAULT_SEED, field: Field = DEFAULT_FIELD) -> tuple:
    """(True, witness seed) when some trial reaches min{C(n+d, n), e}."""
    for t in range(trials):
        s = derive_seed(seed, "mixed", n, d, doubles, simples, t)
        try:
            config = mixed_config(n, doubles, simples, s, field)
        except DuplicatePoint:
            continue
        if hilbert_function(config, d).is_AH:
            return True, s
    return False, None


# Independent re-checking


@dataclass
class TreeCheckReport:
    nodes: int = 0
    leaves: int = 0
    issues: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.issues

    def to_json(self) -> dict:
        return {"nodes": self.nodes, "leaves": self.leaves, "passed": self.passed, "issues": list(self.issues)}


def _cells(node: InductionNode) -> list:
    return [(edge, child.cell) for edge, child in node.children]


def check_tree(tree: InductionNode, trials: int = DEFAULT_TRIALS, seed: int = DEFAULT_SEED,
               field: Field = DEFAULT_FIELD) -> TreeCheckReport:
    report = TreeCheckReport()
    verified = {}
    for node in tree.walk():
        report.nodes += 1
        where = f"{node.kind}{node.cell}"
        issue = report.issues.append
        if node.kind == BASE:
            report.leaves += 1
            _check_leaf(node, where, issue, trials, seed, field, verified)
        elif node.kind == CORE:
            _check_core(node, where, issue)
        elif node.kind == TERRACINI:
            _check_terracini(node, where, issue)
        elif node.kind == REDUCE:
            _check_reduce(node, where, issue)
        elif node.kind == ALL:
            got = sorted(child.r for _, child in node.children)
            if got != required_r_values(node.n, node.d):
                issue(f"{where}: covers r = {got}, needs {required_r_values(node.n, node.d)}")
            if any(child.cell[:2] != (node.n, node.d) for _, child in node.children):
                issue(f"{where}: child with a different (n, d)")
        else:
            issue(f"{where}: unknown node kind")
    return report


def _check_leaf(node, where, issue, trials, seed, field, verified) -> None:
    n, d, r = node.cell
    if node.lemma == MIXED_LEMMA:
        ok, _ = verify_mixed(n, d, r, node.simple_points, trials, seed, field)
        if not ok:
            issue(f"{where}: mixed configuration with {node.simple_points} hyperplane points is not AH")
        return
    if node.lemma is None or base_lemma(n, d, r) != node.lemma:
        issue(f"{where}: lemma {node.lemma!r} does not cover this cell")
    if node.cell not in verified:
        verified[node.cell] = verify_ah(n, d, r, trials, seed, field).observed
    if verified[node.cell] != "AH":
        issue(f"{where}: leaf verification returned {verified[node.cell]}")


def _check_core(node, where, issue) -> None:
    n, d, r = node.cell
    if r not in pivotal_r_values(n, d):
        issue(f"{where}: r is not pivotal")
    try:
        s = horace_split(n, d, r)
    except (NegativeDelta, RangeError) as exc:
        issue(f"{where}: {exc}")
        return
    if node.split is None or node.split.to_json() != s.to_json():
        issue(f"{where}: stored split {node.split and node.split.to_json()} != {s.to_json()}")
    numeric = lemma_numeric_check(n, d, r, s.q, s.epsilon)
    if not numeric.all_hold:
        issue(f"{where}: numeric preconditions fail {numeric.as_tuple()}")
    want = [
        (EDGE_ORDER[0], (n - 1, d, s.q)),
        (EDGE_ORDER[1], (n, d - 1, r - s.q)),
        (EDGE_ORDER[2], (n, d - 2, s.remainder_points)),
    ]
    if _cells(node) != want:
        issue(f"{where}: children {_cells(node)} != {want}")


def _check_terracini(node, where, issue) -> None:
    n, d, r = node.cell
    q = node.q
    if q is None or not 1 <= q <= r:
        issue(f"{where}: bad q {q}")
        return
    gate = terracini_gate(n, d, r, q)
    if gate == "fail" or gate != node.gate:
        issue(f"{where}: gate recomputes to {gate}, stored {node.gate}")
    if len(node.children) != 2:
        issue(f"{where}: needs two children")
        return
    first, second = node.children
    if first[0] != "Terracini-1" or first[1].cell != (n - 1, d, q):
        issue(f"{where}: first child {first[0]} {first[1].cell} != {(n - 1, d, q)}")
    leaf = second[1]
    if second[0] != "Terracini-2" or leaf.cell != (n, d - 1, r - q) or leaf.simple_points != q:
        issue(f"{where}: second child {second[0]} {leaf.cell}+{leaf.simple_points} simple")


def _check_reduce(node, where, issue) -> None:
    n, d, r = node.cell
    if len(node.children) != 1:
        issue(f"{where}: needs one child")
        return
    target = node.children[0][1]
    total = binomial(n + d, n)
    t = target.r
    if target.cell[:2] != (n, d):
        issue(f"{where}: reduction changes (n, d)")
    down = r <= t and t * (n + 1) <= total
    up = t <= r and t * (n + 1) >= total
    if not (down or up):
        issue(f"{where}: {t} points do not control {r} points")
