"""Exact arithmetic on the extended carrier [0, inf] and interval-point sets.

Finite values are :class:`fractions.Fraction`; the point at infinity is the
float ``math.inf``.  Fractions compare exactly against ``math.inf`` so the two
mix freely in comparisons, ``min`` and ``max``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

INF = math.inf

ExtReal = Union[Fraction, float]

_DEC12 = Context(prec=12)


class InvalidInterval(ValueError):
    """Raised for an interval descriptor with ``lo > hi``."""


class UnsupportedSemigroup(ValueError):
    """Raised when a set operation has no exact rule for the given F."""


def ext(value) -> ExtReal:
    """Coerce ints, Fractions, ``"p/q"`` strings and ``"inf"`` to an ExtReal."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        if math.isnan(value) or math.isinf(value):
            raise ValueError(f"not an extended non-negative real: {value!r}")
        return Fraction(value)
    if isinstance(value, str):
        s = value.strip().lower()
        if s in ("inf", "+inf", "infinity", "∞"):
            return INF
        return Fraction(s)
    raise TypeError(f"cannot interpret {value!r} as an extended real")


def is_inf(value) -> bool:
    return isinstance(value, float) and value == INF


def fmt(value: ExtReal) -> str:
    """Canonical text form: ``"inf"``, ``"3"`` or ``"p/q"``."""
    if is_inf(value):
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal12(value: ExtReal) -> str:
    """Decimal rendering with 12 significant digits, derived from the rational."""
    if is_inf(value):
        return "inf"
    value = Fraction(value)
    d = _DEC12.divide(Decimal(value.numerator), Decimal(value.denominator))
    text = format(d, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


@dataclass(frozen=True)
class Part:
    """One interval ``lo..hi`` with open/closed ends; a point when lo == hi."""

    lo: ExtReal
    lo_closed: bool
    hi: ExtReal
    hi_closed: bool

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    def contains(self, x: ExtReal) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_closed:
            return False
        if x == self.hi and not self.hi_closed:
            return False
        return True

    def to_json(self) -> dict:
        return {
            "lo": fmt(self.lo),
            "lo_closed": self.lo_closed,
            "hi": fmt(self.hi),
            "hi_closed": self.hi_closed,
        }

    def __str__(self) -> str:
        if self.is_point:
            return "{" + fmt(self.lo) + "}"
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{fmt(self.lo)},{fmt(self.hi)}{right}"


def point(x) -> Part:
    x = ext(x)
    return Part(x, True, x, True)


def interval(lo, hi, lo_closed=True, hi_closed=True) -> Part:
    return Part(ext(lo), lo_closed, ext(hi), hi_closed)


def _as_part(raw) -> Part:
    if isinstance(raw, Part):
        part = raw
    elif isinstance(raw, dict):
        part = Part(ext(raw["lo"]), bool(raw["lo_closed"]), ext(raw["hi"]), bool(raw["hi_closed"]))
    else:
        lo, lo_c, hi, hi_c = raw
        part = Part(ext(lo), bool(lo_c), ext(hi), bool(hi_c))
    if part.lo > part.hi:
        raise InvalidInterval(f"lo > hi in {part.lo!r}..{part.hi!r}")
    return part


class IntervalPointSet:
    """Normalized finite union of intervals and isolated points in [0, inf].

    The parts are sorted, pairwise disjoint and non-mergeable, so two sets
    are equal exactly when their part tuples are equal.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence[Part] = ()):
        # trusted constructor; use normalize() for raw input
        self.parts = tuple(parts)

    # construction -------------------------------------------------------
    @classmethod
    def empty(cls) -> "IntervalPointSet":
        return cls(())

    @classmethod
    def of(cls, *raw) -> "IntervalPointSet":
        return normalize(raw)

    @classmethod
    def points(cls, xs: Iterable) -> "IntervalPointSet":
        return normalize([point(x) for x in xs])

    # queries ------------------------------------------------------------
    def is_empty(self) -> bool:
        return not self.parts

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __contains__(self, x) -> bool:
        x = ext(x)
        for p in self.parts:
            if p.contains(x):
                return True
            if x < p.lo:
                return False
        return False

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalPointSet) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def inf(self) -> Optional[ExtReal]:
        return self.parts[0].lo if self.parts else None

    def sup(self) -> Optional[ExtReal]:
        return self.parts[-1].hi if self.parts else None

    def min(self) -> Optional[ExtReal]:
        """Least element, or None when the infimum is not attained."""
        if self.parts and self.parts[0].lo_closed:
            return self.parts[0].lo
        return None

    def max(self) -> Optional[ExtReal]:
        if self.parts and self.parts[-1].hi_closed:
            return self.parts[-1].hi
        return None

    def is_finite_set(self) -> bool:
        return all(p.is_point for p in self.parts)

    def elements(self) -> list:
        if not self.is_finite_set():
            raise ValueError("set is not finite")
        return [p.lo for p in self.parts]

    def endpoints(self) -> list:
        out = set()
        for p in self.parts:
            out.add(p.lo)
            out.add(p.hi)
        return sorted(out)

    # algebra ------------------------------------------------------------
    def union(self, other: "IntervalPointSet") -> "IntervalPointSet":
        return normalize(self.parts + other.parts)

    __or__ = union

    def intersection(self, other: "IntervalPointSet") -> "IntervalPointSet":
        out = []
        for a in self.parts:
            for b in other.parts:
                if a.lo > b.lo or (a.lo == b.lo and not a.lo_closed):
                    lo, lc = a.lo, a.lo_closed
                else:
                    lo, lc = b.lo, b.lo_closed
                if a.lo == b.lo:
                    lc = a.lo_closed and b.lo_closed
                if a.hi < b.hi or (a.hi == b.hi and not a.hi_closed):
                    hi, hc = a.hi, a.hi_closed
                else:
                    hi, hc = b.hi, b.hi_closed
                if a.hi == b.hi:
                    hc = a.hi_closed and b.hi_closed
                part = Part(lo, lc, hi, hc)
                if not part.is_empty():
                    out.append(part)
        return normalize(out)

    __and__ = intersection

    def complement(self, lo=Fraction(0), hi=INF) -> "IntervalPointSet":
        """Complement inside the closed interval [lo, hi]."""
        lo, hi = ext(lo), ext(hi)
        out = []
        cur, cur_closed = lo, True
        for p in self.parts:
            gap = Part(cur, cur_closed, p.lo, not p.lo_closed)
            if not gap.is_empty():
                out.append(gap)
            cur, cur_closed = p.hi, not p.hi_closed
        tail = Part(cur, cur_closed, hi, True)
        if not tail.is_empty():
            out.append(tail)
        return normalize(out).intersection(normalize([Part(lo, True, hi, True)]))

    def difference(self, other: "IntervalPointSet") -> "IntervalPointSet":
        return self.intersection(other.complement())

    __sub__ = difference

    def issubset(self, other: "IntervalPointSet") -> bool:
        return self.difference(other).is_empty()

    # serialization ------------------------------------------------------
    def to_json(self) -> list:
        return [p.to_json() for p in self.parts]

    @classmethod
    def from_json(cls, data) -> "IntervalPointSet":
        return normalize(data)

    def __repr__(self) -> str:
        return f"IntervalPointSet({self})"

    def __str__(self) -> str:
        if not self.parts:
            return "∅"
        return " ∪ ".join(str(p) for p in self.parts)


def normalize(raw_parts: Iterable) -> IntervalPointSet:
    """Return the unique normal form of a union of interval descriptors.

    Descriptors may be :class:`Part`, ``(lo, lo_closed, hi, hi_closed)``
    tuples or JSON-style dicts.  Empty descriptors such as ``(1,1)`` are
    dropped; ``lo > hi`` raises :class:`InvalidInterval`.
    """
    parts = [_as_part(r) for r in raw_parts]
    parts = [p for p in parts if not p.is_empty()]
    parts.sort(key=lambda p: (p.lo, not p.lo_closed))
    merged: list = []
    for p in parts:
        if merged:
            q = merged[-1]
            touches = p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed))
            if touches:
                if p.hi > q.hi:
                    merged[-1] = Part(q.lo, q.lo_closed, p.hi, p.hi_closed)
                elif p.hi == q.hi:
                    merged[-1] = Part(q.lo, q.lo_closed, q.hi, q.hi_closed or p.hi_closed)
                continue
        merged.append(p)
    return IntervalPointSet(merged)


def o_hull(A: IntervalPointSet) -> IntervalPointSet:
    """Union of ``(min{x,y}, max{x,y}]`` over all pairs x, y of A.

    For a set with at least two points this is ``(inf A, sup A]``, closed on
    the right exactly when the supremum is attained.
    """
    if A.is_empty():
        return IntervalPointSet.empty()
    if len(A.parts) == 1 and A.parts[0].is_point:
        return IntervalPointSet.empty()
    return normalize([Part(A.inf(), False, A.sup(), A.max() is not None)])


def _split_inf(part: Part) -> list:
    """Separate the point at infinity from the finite portion of a part."""
    if part.hi == INF and part.hi_closed and part.lo != INF:
        return [Part(part.lo, part.lo_closed, INF, False), Part(INF, True, INF, True)]
    return [part]


def f_image(F, A: IntervalPointSet, B: IntervalPointSet) -> IntervalPointSet:
    """Exact image ``{F(x, y) : x in A, y in B}`` for the built-in kinds."""
    from .semigroups import Kind, f_eval

    if F.kind not in (Kind.SUM, Kind.MAX, Kind.LINPROD):
        raise UnsupportedSemigroup(f"no exact image rule for {F.kind.value}")
    if A.is_empty() or B.is_empty():
        return IntervalPointSet.empty()
    out = []
    for pa in (q for p in A.parts for q in _split_inf(p)):
        for pb in (q for p in B.parts for q in _split_inf(p)):
            if pa.lo == INF or pb.lo == INF:
                out.append(point(INF))
                continue
            lo = f_eval(F, pa.lo, pb.lo)
            hi = f_eval(F, pa.hi, pb.hi)
            if F.kind is Kind.MAX:
                if pa.lo > pb.lo:
                    lc = pa.lo_closed
                elif pb.lo > pa.lo:
                    lc = pb.lo_closed
                else:
                    lc = pa.lo_closed and pb.lo_closed
                if pa.hi > pb.hi:
                    hc = pa.hi_closed
                elif pb.hi > pa.hi:
                    hc = pb.hi_closed
                else:
                    hc = pa.hi_closed or pb.hi_closed
            else:
                lc = pa.lo_closed and pb.lo_closed
                hc = pa.hi_closed and pb.hi_closed and hi != INF
            out.append(Part(lo, lc, hi, hc))
    return normalize(out)
