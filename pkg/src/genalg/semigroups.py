"""Associative monotone operations F on [0, inf] used to combine generator values."""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .numerics import INF, ExtReal, IntervalPointSet, ext, fmt, normalize, point


class PreconditionViolated(ValueError):
    """An operation was called outside its documented preconditions."""


class Kind(enum.Enum):
    SUM = "sum"
    MAX = "max"
    LINPROD = "linprod"
    TABLE = "table"


@dataclass(frozen=True)
class SemigroupDescriptor:
    kind: Kind
    neutral: ExtReal
    commutative: bool = True
    continuous: bool = True
    strictly_monotone: bool = False
    gamma_member: bool = True
    carrier: tuple = ()
    table: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def name(self) -> str:
        return self.kind.value

    def __call__(self, x, y) -> ExtReal:
        return f_eval(self, x, y)

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "neutral": fmt(self.neutral)}
        if self.kind is Kind.TABLE:
            out["carrier"] = [fmt(c) for c in self.carrier]
            out["table"] = [[fmt(self.table[(a, b)]) for b in self.carrier] for a in self.carrier]
        return out


SUM = SemigroupDescriptor(Kind.SUM, Fraction(0), strictly_monotone=True)
MAX = SemigroupDescriptor(Kind.MAX, Fraction(0), strictly_monotone=False)
LINPROD = SemigroupDescriptor(Kind.LINPROD, Fraction(0), strictly_monotone=True)

BUILTINS = {"sum": SUM, "max": MAX, "linprod": LINPROD}


def f_eval(F: SemigroupDescriptor, x, y) -> ExtReal:
    """Evaluate F exactly; infinity absorbs under all three built-ins."""
    x, y = ext(x), ext(y)
    kind = F.kind
    if kind is Kind.TABLE:
        try:
            return F.table[(x, y)]
        except KeyError:
            raise PreconditionViolated(
                f"({fmt(x)}, {fmt(y)}) is outside the table carrier"
            ) from None
    if x == INF or y == INF:
        return INF
    if kind is Kind.SUM:
        return x + y
    if kind is Kind.MAX:
        return max(x, y)
    if kind is Kind.LINPROD:
        return x + y + x * y
    raise ValueError(kind)


def table_semigroup(carrier, table, verify: bool = True) -> SemigroupDescriptor:
    """Build a TABLE semigroup; associativity and flags are checked exhaustively."""
    carrier = tuple(sorted(ext(c) for c in carrier))
    if len(set(carrier)) != len(carrier) or not carrier:
        raise PreconditionViolated("carrier must be a non-empty set")
    if len(table) != len(carrier) or any(len(row) != len(carrier) for row in table):
        raise PreconditionViolated("table must be square over the carrier")
    ops = {}
    for a, row in zip(carrier, table):
        for b, v in zip(carrier, row):
            v = ext(v)
            if v not in carrier:
                raise PreconditionViolated(f"table value {fmt(v)} not in carrier")
            ops[(a, b)] = v
    comm = all(ops[(a, b)] == ops[(b, a)] for a in carrier for b in carrier)
    neutral = None
    for e in carrier:
        if all(ops[(e, a)] == a and ops[(a, e)] == a for a in carrier):
            neutral = e
            break
    desc = SemigroupDescriptor(
        Kind.TABLE,
        neutral if neutral is not None else INF,
        commutative=comm,
        continuous=False,
        strictly_monotone=False,
        gamma_member=False,
        carrier=carrier,
        table=ops,
    )
    if verify:
        for a, b, c in itertools.product(carrier, repeat=3):
            if ops[(ops[(a, b)], c)] != ops[(a, ops[(b, c)])]:
                raise PreconditionViolated(
                    f"table is not associative at ({fmt(a)}, {fmt(b)}, {fmt(c)})"
                )
        mono = all(
            ops[(a, b)] <= ops[(a, c)]
            for a in carrier
            for b, c in itertools.combinations(carrier, 2)
        ) and all(
            ops[(b, a)] <= ops[(c, a)]
            for a in carrier
            for b, c in itertools.combinations(carrier, 2)
        )
        if not mono:
            raise PreconditionViolated("table is not monotone")
        strict = all(
            ops[(a, b)] < ops[(a, c)]
            for a in carrier
            if a != INF
            for b, c in itertools.combinations(carrier, 2)
        )
        gamma = comm and all(ops[(a, carrier[0])] >= a for a in carrier) and carrier[0] == 0
        desc = SemigroupDescriptor(
            Kind.TABLE,
            desc.neutral,
            commutative=comm,
            continuous=False,
            strictly_monotone=strict,
            gamma_member=gamma,
            carrier=carrier,
            table=ops,
        )
    return desc


def load_table(path) -> SemigroupDescriptor:
    with open(path) as fh:
        data = json.load(fh)
    return table_semigroup(data["carrier"], data["table"])


def parse_semigroup(text: str) -> SemigroupDescriptor:
    """``sum``, ``max``, ``linprod`` or ``table:<path>``."""
    text = text.strip()
    if text.lower() in BUILTINS:
        return BUILTINS[text.lower()]
    if text.lower().startswith("table:"):
        return load_table(text[len("table:"):])
    raise ValueError(f"unknown semigroup {text!r}")


@dataclass
class EvidenceReport:
    kind: str
    checked: int
    violations: list
    strictness_witness: Optional[tuple] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "checked": self.checked,
            "violations": [[name] + [fmt(v) for v in vals] for name, vals in self.violations],
            "strictness_witness": None
            if self.strictness_witness is None
            else [fmt(v) for v in self.strictness_witness],
        }


def _probe_grid(F: SemigroupDescriptor, budget: int) -> list:
    if F.kind is Kind.TABLE:
        return list(F.carrier)
    # n^3 triples are checked, so n is about the cube root of the budget
    n = max(3, round(budget ** (1 / 3)))
    return [Fraction(0)] + [Fraction(i, 3) for i in range(1, n - 1)] + [INF]


def gamma_evidence(F: SemigroupDescriptor, sample_budget: int = 10_000) -> EvidenceReport:
    """Sample the Gamma-class axioms on a rational grid with infinity.

    Reports associativity, commutativity, monotonicity and ``F(x,0) >= x``
    violations, plus a witness against strict monotonicity when one exists.
    """
    grid = _probe_grid(F, sample_budget)
    violations = []
    checked = 0
    for a, b, c in itertools.product(grid, repeat=3):
        checked += 1
        if f_eval(F, f_eval(F, a, b), c) != f_eval(F, a, f_eval(F, b, c)):
            violations.append(("associativity", (a, b, c)))
    for a, b in itertools.product(grid, repeat=2):
        if f_eval(F, a, b) != f_eval(F, b, a):
            violations.append(("commutativity", (a, b)))
    zero = grid[0]
    for a in grid:
        if f_eval(F, a, zero) < a:
            violations.append(("lower_bound", (a,)))
    for a in grid:
        for b, c in itertools.combinations(grid, 2):
            if f_eval(F, a, b) > f_eval(F, a, c):
                violations.append(("monotonicity", (a, b, c)))
    witness = None
    for a in grid:
        if a == INF:
            continue
        for b, c in itertools.combinations(grid, 2):
            if f_eval(F, a, b) == f_eval(F, a, c):
                witness = (a, b, c)
                break
        if witness:
            break
    return EvidenceReport(F.kind.value, checked, violations, witness)


def idempotents_of(F: SemigroupDescriptor, probe_set: IntervalPointSet) -> IntervalPointSet:
    """Elements a of the probe set with F(a, a) = a.

    For SUM and LINPROD only 0 and infinity qualify; under MAX every element
    does.  TABLE semigroups are enumerated directly.
    """
    if not F.continuous:
        raise PreconditionViolated("idempotent characterization needs a continuous F")
    if F.kind is Kind.MAX:
        return probe_set
    # a + a = a and a + a + a*a = a both force a in {0, inf}
    return probe_set.intersection(IntervalPointSet.points([0, INF]))


def solve_right(F: SemigroupDescriptor, p, q) -> list:
    """Values y >= 0 with F(p, y) = q where the solution set is a single point.

    Used for critical values of the cell decomposition.  MAX returns q when
    p < q (the only place where y -> max(p, y) passes q).
    """
    p, q = ext(p), ext(q)
    if p == INF or q == INF:
        return []
    if F.kind is Kind.SUM:
        y = q - p
    elif F.kind is Kind.LINPROD:
        y = (1 + q) / (1 + p) - 1
    elif F.kind is Kind.MAX:
        y = q if p <= q else None
    else:
        return []
    if y is None or y < 0:
        return []
    return [y]


def preimage_right(F: SemigroupDescriptor, y, target: IntervalPointSet, domain: IntervalPointSet) -> IntervalPointSet:
    """``{x in domain : F(x, y) in target}`` for a fixed y, exactly."""
    y = ext(y)
    if F.kind is Kind.TABLE:
        xs = [x for x in F.carrier if x in domain and f_eval(F, x, y) in target]
        return IntervalPointSet.points(xs)
    if y == INF:
        return domain if INF in target else IntervalPointSet.empty()
    parts = []
    for p in target.parts:
        parts.extend(_preimage_part(F, y, p))
    pre = normalize(parts)
    if INF in target:
        pre = pre.union(IntervalPointSet.points([INF]))
    return pre.intersection(domain)


def _preimage_part(F, y, p):
    from .numerics import Part

    def inv(v):
        if v == INF:
            return INF
        if F.kind is Kind.SUM:
            return v - y
        return (1 + v) / (1 + y) - 1

    if F.kind in (Kind.SUM, Kind.LINPROD):
        lo, hi = inv(p.lo), inv(p.hi)
        lc, hc = p.lo_closed, p.hi_closed
        if hi < 0 or (hi == 0 and not hc):
            return []
        if lo < 0:
            lo, lc = Fraction(0), True
        if hi == INF:
            hc = False
        return [Part(lo, lc, hi, hc)] if lo != INF else []
    # MAX: max(x, y) in p
    out = []
    if p.contains(y):
        # every x <= y works, plus x in p above y
        out.append(Part(Fraction(0), True, y, True))
        out.append(Part(y, True, p.hi, p.hi_closed and p.hi != INF))
    elif y < p.lo or (y == p.lo and not p.lo_closed):
        if p.lo != INF:
            out.append(Part(p.lo, p.lo_closed, p.hi, p.hi_closed and p.hi != INF))
    return [q for q in out if not q.is_empty()]
