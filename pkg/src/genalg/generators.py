"""Finite-segment monotone functions with exact values and one-sided limits.

A generator t maps [0, 1] into [0, inf].  The same representation, with
domain [0, inf], holds the pseudo-inverses built in :mod:`genalg.inverses`.
"""

from __future__ import annotations

import bisect
import enum
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .numerics import (
    INF,
    ExtReal,
    IntervalPointSet,
    Part,
    ext,
    fmt,
    normalize,
    point,
)


class MalformedPartition(ValueError):
    """Segment domains do not partition the function's domain, or t is not monotone."""


class DomainError(ValueError):
    """An argument lies outside the function's domain."""


class Direction(enum.Enum):
    NON_DECREASING = "non_decreasing"
    NON_INCREASING = "non_increasing"


class SegKind(enum.Enum):
    CONSTANT = "CONSTANT"
    AFFINE = "AFFINE"
    RECIPROCAL = "RECIPROCAL"
    POINT_INF = "POINT_INF"


@dataclass(frozen=True)
class Segment:
    """One formula on a sub-interval.

    CONSTANT(c); AFFINE(a, b) is a*x + b; RECIPROCAL(c, d, e) is
    c/(d - x) + e with e defaulting to 0; POINT_INF is the constant infinity.
    """

    lo: ExtReal
    lo_closed: bool
    hi: ExtReal
    hi_closed: bool
    kind: SegKind
    params: tuple = ()

    @property
    def part(self) -> Part:
        return Part(self.lo, self.lo_closed, self.hi, self.hi_closed)

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi

    def contains(self, x) -> bool:
        return self.part.contains(x)

    def trend(self) -> int:
        """+1 increasing, -1 decreasing, 0 constant."""
        if self.kind in (SegKind.CONSTANT, SegKind.POINT_INF) or self.degenerate:
            return 0
        if self.kind is SegKind.AFFINE:
            return 1 if self.params[0] > 0 else -1
        return 1 if self.params[0] > 0 else -1

    def formula(self, x) -> ExtReal:
        """Formula value, using the limit at a pole or at infinity."""
        k = self.kind
        if k is SegKind.POINT_INF:
            return INF
        if k is SegKind.CONSTANT:
            return self.params[0]
        if k is SegKind.AFFINE:
            a, b = self.params
            if x == INF:
                return INF if a > 0 else Fraction(0)
            return a * x + b
        c, d, e = self.params
        if x == INF:
            return e
        if x == d:
            return INF
        return c / (d - x) + e

    def solve(self, v) -> Optional[ExtReal]:
        """The x with formula(x) = v for a strictly monotone formula, else None."""
        k = self.kind
        if k is SegKind.AFFINE:
            if v == INF:
                return None
            a, b = self.params
            return (v - b) / a
        if k is SegKind.RECIPROCAL:
            c, d, e = self.params
            if v == INF:
                return d
            if v == e:
                return INF
            return d - c / (v - e)
        return None

    def inverse_formula(self) -> tuple:
        """Kind and params of the formula inverse (strictly monotone kinds only)."""
        if self.kind is SegKind.AFFINE:
            a, b = self.params
            return SegKind.AFFINE, (1 / a, -b / a)
        c, d, e = self.params
        return SegKind.RECIPROCAL, (c, e, d)

    def image(self) -> Part:
        """Value range over the segment with endpoint attainment."""
        if self.kind is SegKind.POINT_INF:
            return point(INF)
        if self.kind is SegKind.CONSTANT or self.degenerate:
            v = self.formula(self.lo)
            return Part(v, True, v, True)
        a, b = self.formula(self.lo), self.formula(self.hi)
        ac = self.lo_closed and a != INF and self.lo != INF
        bc = self.hi_closed and b != INF and self.hi != INF
        if self.trend() > 0:
            return Part(a, ac, b, bc)
        return Part(b, bc, a, ac)

    def to_json(self) -> dict:
        return {
            "lo": fmt(self.lo),
            "lo_closed": self.lo_closed,
            "hi": fmt(self.hi),
            "hi_closed": self.hi_closed,
            "kind": self.kind.value,
            "params": [fmt(p) for p in self.params],
        }

    def describe(self) -> str:
        k = self.kind
        if k is SegKind.POINT_INF:
            f = "inf"
        elif k is SegKind.CONSTANT:
            f = fmt(self.params[0])
        elif k is SegKind.AFFINE:
            a, b = self.params
            f = f"{fmt(a)}*x + {fmt(b)}" if b else f"{fmt(a)}*x"
        else:
            c, d, e = self.params
            f = f"{fmt(c)}/({fmt(d)} - x)" + (f" + {fmt(e)}" if e else "")
        return f"{f} on {self.part}"


def make_segment(lo, lo_closed, hi, hi_closed, kind, params=()) -> Segment:
    kind = SegKind(kind.upper()) if isinstance(kind, str) else kind
    params = tuple(ext(p) for p in params)
    if kind is SegKind.RECIPROCAL and len(params) == 2:
        params = params + (Fraction(0),)
    expected = {SegKind.CONSTANT: 1, SegKind.AFFINE: 2, SegKind.RECIPROCAL: 3, SegKind.POINT_INF: 0}
    if len(params) != expected[kind]:
        raise MalformedPartition(f"{kind.value} takes {expected[kind]} parameters, got {len(params)}")
    if kind is SegKind.AFFINE and params[0] == 0:
        raise MalformedPartition("AFFINE slope must be non-zero; use CONSTANT")
    if kind is SegKind.RECIPROCAL and params[0] == 0:
        raise MalformedPartition("RECIPROCAL numerator must be non-zero")
    return Segment(ext(lo), bool(lo_closed), ext(hi), bool(hi_closed), kind, params)


@dataclass(frozen=True)
class PiecewiseMonotone:
    segments: tuple
    direction: Direction = Direction.NON_DECREASING
    domain: tuple = (Fraction(0), Fraction(1))
    _los: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        object.__setattr__(self, "_los", tuple((s.lo, not s.lo_closed) for s in self.segments))

    # evaluation ---------------------------------------------------------
    def segment_at(self, x) -> Segment:
        x = ext(x)
        lo, hi = self.domain
        if x < lo or x > hi:
            raise DomainError(f"{fmt(x)} outside [{fmt(lo)}, {fmt(hi)}]")
        i = bisect.bisect_right(self._los, (x, False)) - 1
        for j in (i, i - 1, i + 1):
            if 0 <= j < len(self.segments) and self.segments[j].contains(x):
                return self.segments[j]
        for s in self.segments:
            if s.contains(x):
                return s
        raise MalformedPartition(f"no segment contains {fmt(x)}")

    def __call__(self, x) -> ExtReal:
        x = ext(x)
        return self.segment_at(x).formula(x)

    def _left_segment(self, x) -> Optional[Segment]:
        for s in self.segments:
            if s.lo < x <= s.hi:
                return s
        return None

    def _right_segment(self, x) -> Optional[Segment]:
        for s in self.segments:
            if s.lo <= x < s.hi:
                return s
        return None

    def left_limit(self, x) -> ExtReal:
        x = ext(x)
        if x == self.domain[0]:
            return self(x)
        s = self._left_segment(x)
        return s.formula(x)

    def right_limit(self, x) -> ExtReal:
        x = ext(x)
        if x == self.domain[1]:
            return INF if self.direction is Direction.NON_DECREASING else self(x)
        s = self._right_segment(x)
        return s.formula(x)

    def breakpoints(self) -> list:
        pts = set()
        for s in self.segments:
            pts.add(s.lo)
            pts.add(s.hi)
        return sorted(pts)

    def is_constant(self) -> bool:
        vals = {s.image().lo for s in self.segments} | {s.image().hi for s in self.segments}
        return len(vals) == 1

    # serialization ------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "direction": self.direction.value,
            "segments": [s.to_json() for s in self.segments],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PiecewiseMonotone":
        direction = Direction(data.get("direction", "non_decreasing").lower())
        segs = []
        for s in data["segments"]:
            if isinstance(s, (list, tuple)):
                # compact form [lo, lo_closed, hi, hi_closed, kind, params]
                segs.append(make_segment(*s))
            else:
                segs.append(make_segment(s["lo"], s["lo_closed"], s["hi"], s["hi_closed"], s["kind"], s.get("params", ())))
        dom = data.get("domain")
        domain = (ext(dom[0]), ext(dom[1])) if dom else (Fraction(0), Fraction(1))
        t = cls(tuple(segs), direction, domain)
        validate(t)
        return t

    def describe(self) -> str:
        return "; ".join(s.describe() for s in self.segments)


def load_generator(path) -> PiecewiseMonotone:
    with open(path) as fh:
        return PiecewiseMonotone.from_json(json.load(fh))


def pw(direction="non_decreasing", *segs, domain=(0, 1)) -> PiecewiseMonotone:
    """Compact constructor: ``pw("non_decreasing", (lo, lc, hi, hc, kind, params), ...)``."""
    segments = tuple(make_segment(*s) for s in segs)
    t = PiecewiseMonotone(segments, Direction(direction), (ext(domain[0]), ext(domain[1])))
    validate(t)
    return t


@dataclass
class ValidationReport:
    direction: Direction
    left_continuous: bool
    right_continuous: bool
    strictly_monotone: bool
    continuous: bool
    constant: bool
    violations: list

    def to_json(self) -> dict:
        return {
            "direction": self.direction.value,
            "left_continuous": self.left_continuous,
            "right_continuous": self.right_continuous,
            "continuous": self.continuous,
            "strictly_monotone": self.strictly_monotone,
            "constant": self.constant,
            "violations": [[kind, fmt(x)] for kind, x in self.violations],
        }


def _check_partition(t: PiecewiseMonotone) -> None:
    segs = t.segments
    lo, hi = t.domain
    if not segs:
        raise MalformedPartition("no segments")
    if segs[0].lo != lo or not segs[0].lo_closed:
        raise MalformedPartition(f"domain start {fmt(lo)} not covered")
    if segs[-1].hi != hi or not segs[-1].hi_closed:
        raise MalformedPartition(f"domain end {fmt(hi)} not covered")
    for s in segs:
        if s.lo > s.hi or (s.lo == s.hi and not (s.lo_closed and s.hi_closed)):
            raise MalformedPartition(f"empty segment {s.part}")
    for a, b in zip(segs, segs[1:]):
        if a.hi != b.lo:
            raise MalformedPartition(f"gap or overlap between {a.part} and {b.part}")
        if a.hi_closed == b.lo_closed:
            what = "overlap" if a.hi_closed else "gap"
            raise MalformedPartition(f"{what} at {fmt(a.hi)}")


def _check_formula(s: Segment) -> None:
    if s.kind is SegKind.RECIPROCAL:
        d = s.params[1]
        inside = s.lo < d < s.hi or (d == s.lo and s.lo_closed) or (d == s.hi and s.hi_closed)
        if inside:
            raise MalformedPartition(f"pole {fmt(d)} inside {s.part}")
    if s.kind in (SegKind.AFFINE, SegKind.RECIPROCAL) and s.hi == INF and s.hi_closed:
        raise MalformedPartition("only constant segments may contain infinity")
    im = s.image()
    if im.lo < 0:
        raise MalformedPartition(f"negative values on {s.part}")


def validate(t: PiecewiseMonotone) -> ValidationReport:
    """Check the partition and monotonicity; report continuity and strictness."""
    _check_partition(t)
    for s in t.segments:
        _check_formula(s)
    sign = 1 if t.direction is Direction.NON_DECREASING else -1
    for s in t.segments:
        if s.trend() * sign < 0:
            raise MalformedPartition(f"segment {s.part} runs against {t.direction.value}")
    strict = all(s.trend() != 0 for s in t.segments if not s.degenerate)
    for a, b in zip(t.segments, t.segments[1:]):
        ia, ib = a.image(), b.image()
        if sign > 0:
            first, second = (ia.hi, ia.hi_closed), (ib.lo, ib.lo_closed)
        else:
            first, second = (ib.hi, ib.hi_closed), (ia.lo, ia.lo_closed)
        if first[0] > second[0]:
            raise MalformedPartition(f"not {t.direction.value} at {fmt(a.hi)}")
        if first[0] == second[0] and first[1] and second[1]:
            strict = False
    violations = []
    lo, hi = t.domain
    for x in t.breakpoints():
        v = t(x)
        if x > lo and t.left_limit(x) != v:
            violations.append(("left_discontinuity", x))
        if x < hi and t.right_limit(x) != v:
            violations.append(("right_discontinuity", x))
    left = not any(k == "left_discontinuity" for k, _ in violations)
    right = not any(k == "right_discontinuity" for k, _ in violations)
    if not strict:
        # report the first plateau for reference
        for s in t.segments:
            if s.trend() == 0 and not s.degenerate:
                violations.append(("plateau", s.lo))
                break
    return ValidationReport(
        t.direction, left, right, strict, left and right, t.is_constant(), violations
    )


def eval_with_limits(t: PiecewiseMonotone, x) -> tuple:
    """``(t(x-), t(x), t(x+))`` with the endpoint conventions of the carrier."""
    x = ext(x)
    lo, hi = t.domain
    if x < lo or x > hi:
        raise DomainError(f"{fmt(x)} outside [{fmt(lo)}, {fmt(hi)}]")
    return t.left_limit(x), t(x), t.right_limit(x)


def range_of(t: PiecewiseMonotone) -> IntervalPointSet:
    """Exact range of t as a normalized interval-point set."""
    return normalize([s.image() for s in t.segments])


def preimage_of_value(t: PiecewiseMonotone, v) -> IntervalPointSet:
    """``{x : t(x) = v}``."""
    v = ext(v)
    parts = []
    for s in t.segments:
        if s.kind is SegKind.POINT_INF or s.kind is SegKind.CONSTANT or s.degenerate:
            if s.formula(s.lo) == v:
                parts.append(s.part)
            continue
        x = s.solve(v)
        if x is not None and x != INF and s.contains(x):
            parts.append(point(x))
    return normalize(parts)


def preimage(t: PiecewiseMonotone, target: IntervalPointSet) -> IntervalPointSet:
    """``{x : t(x) in target}`` for monotone t."""
    parts = []
    for s in t.segments:
        if s.trend() == 0:
            if s.formula(s.lo) in target:
                parts.append(s.part)
            continue
        hit = target.intersection(normalize([s.image()]))
        for q in hit.parts:
            a = s.solve(q.lo)
            b = s.solve(q.hi) if q.hi != INF else None
            if b is None:
                b = s.hi if s.trend() > 0 else s.lo
            if s.trend() > 0:
                cand = Part(a, q.lo_closed, b, q.hi_closed)
            else:
                cand = Part(b, q.hi_closed, a, q.lo_closed)
            parts.extend(normalize([cand]).intersection(normalize([s.part])).parts)
    return normalize(parts)


@dataclass
class PlateauData:
    """Plateau bookkeeping of a generator.

    H holds the plateau values, G the right ends of the plateaus, W the points
    whose value is not a plateau value and D = G ∪ W, the set on which t is
    injective.
    """

    H: IntervalPointSet
    G: IntervalPointSet
    W: IntervalPointSet
    D: IntervalPointSet

    def to_json(self) -> dict:
        return {k: getattr(self, k).to_json() for k in ("H", "G", "W", "D")}


def plateau_data(t: PiecewiseMonotone) -> PlateauData:
    values = sorted({s.formula(s.lo) for s in t.segments if s.trend() == 0 and not s.degenerate})
    H = IntervalPointSet.points(values)
    sups = []
    covered = IntervalPointSet.empty()
    for h in values:
        pre = preimage_of_value(t, h)
        covered = covered.union(pre)
        sups.append(pre.sup())
    G = IntervalPointSet.points(sups)
    W = covered.complement(*t.domain)
    return PlateauData(H, G, W, G.union(W))


def sample_points(t: PiecewiseMonotone, per_piece: int = 1) -> list:
    """Breakpoints plus ``per_piece`` evenly spaced interior points per piece."""
    bps = [b for b in t.breakpoints() if b != INF]
    pts = set(bps)
    for a, b in zip(bps, bps[1:]):
        for i in range(1, per_piece + 1):
            pts.add(a + (b - a) * Fraction(i, per_piece + 1))
    return sorted(pts)
