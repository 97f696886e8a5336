"""Pseudo-inverses of monotone generators as explicit piecewise functions.

Every inverse here is built the same way: the value axis [0, inf] is cut at
the endpoints of the segment images.  On an open cut piece that lies inside
the image of a strictly monotone segment, the inverse is that segment's
formula inverse; on every other piece, and at every cut point, it is a
constant obtained from the defining sup/inf directly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .generators import (
    Direction,
    DomainError,
    MalformedPartition,
    PiecewiseMonotone,
    SegKind,
    Segment,
    plateau_data,
    preimage_of_value,
    sample_points,
    validate,
)
from .numerics import INF, ExtReal, ext, fmt


# pointwise definitions -------------------------------------------------------

_PRED = {
    "le": lambda v, y: v <= y,
    "lt": lambda v, y: v < y,
    "ge": lambda v, y: v >= y,
    "gt": lambda v, y: v > y,
}


def _all_or_none(im, op, y) -> tuple:
    """Whether every / no value of a monotone segment image satisfies ``v op y``."""
    if op == "le":
        return im.hi <= y, im.lo > y or (im.lo == y and not im.lo_closed)
    if op == "lt":
        return im.hi < y or (im.hi == y and not im.hi_closed), im.lo >= y
    if op == "ge":
        return im.lo >= y, im.hi < y or (im.hi == y and not im.hi_closed)
    return im.lo > y or (im.lo == y and not im.lo_closed), im.hi <= y


def _sup_where(t: PiecewiseMonotone, y, op: str) -> ExtReal:
    """sup{x : t(x) op y}; the empty sup is the domain start.

    ``le``/``lt`` go with non-decreasing t and ``ge``/``gt`` with
    non-increasing t, so the selected part of each segment is an initial piece.
    """
    best = None
    pred = _PRED[op]
    for s in t.segments:
        im = s.image()
        if s.trend() == 0:
            if pred(im.lo, y):
                best = s.hi
            continue
        every, none = _all_or_none(im, op, y)
        if every:
            best = s.hi
        elif not none:
            best = s.solve(y)
    return t.domain[0] if best is None else best


def weak_inverse_at(t: PiecewiseMonotone, y) -> ExtReal:
    """t^[-1](y) evaluated from the definition."""
    y = ext(y)
    if validate_cached(t).constant:
        return t.domain[1]
    if t.direction is Direction.NON_DECREASING:
        return _sup_where(t, y, "le")
    return _sup_where(t, y, "ge")


def pseudo_inverse_at(t: PiecewiseMonotone, y) -> ExtReal:
    """t^(-1)(y) evaluated from the definition (strict sublevel/superlevel sup)."""
    y = ext(y)
    if validate_cached(t).constant:
        return t.domain[0]
    if t.direction is Direction.NON_DECREASING:
        return _sup_where(t, y, "lt")
    return _sup_where(t, y, "gt")


def upper_quasi_at(t: PiecewiseMonotone, y) -> ExtReal:
    """inf{x : t(x) > y}, with the infimum of the empty set equal to the domain end."""
    y = ext(y)
    best = None
    for s in t.segments:
        im = s.image()
        if s.trend() == 0:
            if im.lo > y:
                best = s.lo
                break
            continue
        if im.lo > y or (im.lo == y and not im.lo_closed):
            best = s.lo
            break
        if im.hi > y:
            best = s.solve(y)
            break
    return t.domain[1] if best is None else best


@functools.lru_cache(maxsize=512)
def validate_cached(t: PiecewiseMonotone):
    return validate(t)


# piecewise construction ------------------------------------------------------

def _cuts(t: PiecewiseMonotone) -> list:
    vals = {Fraction(0)}
    for s in t.segments:
        im = s.image()
        vals.add(im.lo)
        vals.add(im.hi)
    vals.discard(INF)
    return sorted(v for v in vals if v >= 0)


def _covering_segment(t: PiecewiseMonotone, p, q) -> Optional[Segment]:
    for s in t.segments:
        if s.trend() == 0:
            continue
        im = s.image()
        if im.lo <= p and q <= im.hi:
            return s
    return None


def _build(t: PiecewiseMonotone, pointwise: Callable, direction: Direction) -> PiecewiseMonotone:
    cuts = _cuts(t)
    raw = []  # (lo, lc, hi, hc, kind, params)
    bounds = cuts + [INF]
    for p, q in zip(bounds, bounds[1:]):
        raw.append((p, True, p, True, SegKind.CONSTANT, (pointwise(p),)))
        mid = p + 1 if q == INF else (p + q) / 2
        s = _covering_segment(t, p, q)
        if s is not None:
            kind, params = s.inverse_formula()
            probe = Segment(p, False, q, False, kind, params)
            if probe.formula(mid) != pointwise(mid):
                s = None
        if s is None:
            raw.append((p, False, q, False, SegKind.CONSTANT, (pointwise(mid),)))
        else:
            raw.append((p, False, q, False, kind, params))
    raw.append((INF, True, INF, True, SegKind.CONSTANT, (pointwise(INF),)))
    segs = _merge([Segment(*r) for r in raw])
    return PiecewiseMonotone(tuple(segs), direction, (Fraction(0), INF))


def _same_formula(a: Segment, b: Segment) -> bool:
    return a.kind == b.kind and a.params == b.params


def _absorbs(seg: Segment, pt: Segment) -> bool:
    """Can the point segment ``pt`` be joined to the formula segment ``seg``?"""
    x = pt.lo
    if x == INF:
        return seg.kind is SegKind.CONSTANT and seg.params == pt.params
    return seg.formula(x) == pt.params[0] and (seg.kind is not SegKind.RECIPROCAL or x != seg.params[1])


def _merge(segs: list) -> list:
    # join isolated points into a neighbour when the formula agrees there
    out: list = []
    i = 0
    while i < len(segs):
        s = segs[i]
        if s.degenerate:
            if out and _absorbs(out[-1], s) and not out[-1].hi_closed:
                prev = out.pop()
                out.append(Segment(prev.lo, prev.lo_closed, s.hi, True, prev.kind, prev.params))
                i += 1
                continue
            if i + 1 < len(segs) and not segs[i + 1].degenerate and _absorbs(segs[i + 1], s):
                nxt = segs[i + 1]
                segs[i + 1] = Segment(s.lo, True, nxt.hi, nxt.hi_closed, nxt.kind, nxt.params)
                i += 1
                continue
        out.append(s)
        i += 1
    # then join adjacent pieces carrying the same formula
    joined: list = []
    for s in out:
        if joined and _same_formula(joined[-1], s) and not (s.degenerate and s.lo == INF and s.kind is not SegKind.CONSTANT):
            prev = joined.pop()
            joined.append(Segment(prev.lo, prev.lo_closed, s.hi, s.hi_closed, prev.kind, prev.params))
        else:
            joined.append(s)
    return joined


def weak_pseudo_inverse(t: PiecewiseMonotone) -> PiecewiseMonotone:
    """t^[-1] on [0, inf] as an explicit piecewise function.

    For non-decreasing t this is ``y -> sup{x : t(x) <= y}``, for
    non-increasing t ``y -> sup{x : t(x) >= y}``, and the constant 1 for a
    constant t.
    """
    rep = validate_cached(t)
    if rep.constant:
        return _constant_on_carrier(t.domain[1])
    return _build(t, lambda y: weak_inverse_at(t, y), t.direction)


def pseudo_inverse(t: PiecewiseMonotone) -> PiecewiseMonotone:
    """t^(-1) on [0, inf]: sup of the strict sublevel (superlevel) set."""
    rep = validate_cached(t)
    if rep.constant:
        return _constant_on_carrier(t.domain[0])
    return _build(t, lambda y: pseudo_inverse_at(t, y), t.direction)


def quasi_inverse_bounds(t: PiecewiseMonotone) -> tuple:
    """The lower and upper bound functions t^∧ and t^∨ of the quasi-inverses.

    ``t^∧(y) = sup{x : t(x) < y}`` and ``t^∨(y) = inf{x : t(x) > y}``.
    """
    if t.direction is not Direction.NON_DECREASING:
        raise MalformedPartition("quasi-inverse bounds need a non-decreasing generator")
    validate_cached(t)
    wedge = _build(t, lambda y: _sup_where(t, y, "lt"), Direction.NON_DECREASING)
    vee = _build(t, lambda y: upper_quasi_at(t, y), Direction.NON_DECREASING)
    return wedge, vee


def _constant_on_carrier(c) -> PiecewiseMonotone:
    seg = Segment(Fraction(0), True, INF, True, SegKind.CONSTANT, (c,))
    return PiecewiseMonotone((seg,), Direction.NON_DECREASING, (Fraction(0), INF))


# plateau predicates ------------------------------------------------------------

def plateau_witness(t: PiecewiseMonotone, x0) -> Optional[ExtReal]:
    """δ > 0 with t constant on [x0, x0+δ) and jumping at x0+δ, if one exists.

    Exists exactly when t(t^[-1](t(x0))) moves past t(x0); then
    δ = t^[-1](t(x0)) - x0.
    """
    x0 = ext(x0)
    lo, hi = t.domain
    if x0 < lo or x0 >= hi:
        raise DomainError(f"x0 = {fmt(x0)} must lie in [{fmt(lo)}, {fmt(hi)})")
    v = t(x0)
    alpha = weak_inverse_at(t, v)
    w = t(alpha)
    moved = w > v if t.direction is Direction.NON_DECREASING else w < v
    if not moved:
        return None
    return alpha - x0


@dataclass
class Check:
    holds: bool
    counterexample: Optional[tuple] = None
    note: str = ""

    def to_json(self) -> dict:
        out = {"holds": self.holds}
        if self.counterexample is not None:
            out["counterexample"] = [fmt(v) for v in self.counterexample]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class IdentityReport:
    checks: dict = field(default_factory=dict)
    grid_size: int = 0

    def __getitem__(self, key) -> Check:
        return self.checks[key]

    def to_json(self) -> dict:
        return {"grid_size": self.grid_size, "checks": {k: v.to_json() for k, v in sorted(self.checks.items())}}


def value_grid(t: PiecewiseMonotone) -> list:
    """Value-axis probe points: image endpoints, midpoints, values at x-samples."""
    vals = set(_cuts(t))
    xs = sample_points(t, per_piece=3)
    vals.update(v for v in (t(x) for x in xs) if v != INF)
    ordered = sorted(vals)
    for a, b in zip(ordered, ordered[1:]):
        vals.add((a + b) / 2)
    vals.add(max(vals) + 1)
    vals.add(INF)
    return sorted(vals)


def plateau_set_nonempty(t: PiecewiseMonotone) -> Optional[ExtReal]:
    """A point of {x : t(t^[-1](t(x))) != t(x)} decided from the segment structure."""
    pd = plateau_data(t)
    for h in (p.lo for p in pd.H.parts):
        pre = preimage_of_value(t, h)
        s = pre.sup()
        if t(s) != h:
            return pre.inf()
    return None


def inverse_identities_report(t: PiecewiseMonotone, per_piece: int = 12) -> IdentityReport:
    """Pointwise checks of the composition identities on a refined grid."""
    rep = validate_cached(t)
    tinv = weak_pseudo_inverse(t)
    pinv = pseudo_inverse(t)
    xs = sample_points(t, per_piece=per_piece)
    ys = value_grid(t)
    up = t.direction is Direction.NON_DECREASING
    out = IdentityReport(grid_size=len(xs))

    bad = next((x for x in xs if tinv(t(x)) < x), None)
    out.checks["tinv_t_ge_id"] = Check(bad is None, None if bad is None else (bad,))

    def below_t(x):
        a, b = t(tinv(t(x))), t(x)
        return a < b if up else a > b

    bad = next((x for x in xs if below_t(x)), None)
    out.checks["t_tinv_t_ge_t"] = Check(bad is None, None if bad is None else (bad,))

    bad = next((x for x in xs if t(tinv(t(x))) != t(x)), None)
    hyp = rep.left_continuous or rep.strictly_monotone
    out.checks["t_tinv_t_eq_t"] = Check(
        bad is None,
        None if bad is None else (bad,),
        "left-continuous or strict: identity guaranteed" if hyp else "hypothesis unmet; checked pointwise",
    )
    if hyp and bad is not None:
        out.checks["t_tinv_t_eq_t"].note = "hypothesis met but identity failed"

    plateau_pt = plateau_set_nonempty(t)
    plateau_ok = (plateau_pt is None) == (bad is None)
    out.checks["plateau_iff_identity"] = Check(
        plateau_ok, None if plateau_pt is None else (plateau_pt,), "plateau set empty" if plateau_pt is None else "plateau set non-empty"
    )

    diff = next((y for y in ys if tinv(y) != pinv(y)), None)
    coincide = diff is None
    out.checks["tinv_eq_pinv"] = Check(coincide, None if coincide else (diff,))
    out.checks["coincide_iff_strict"] = Check(coincide == rep.strictly_monotone)

    bad = next((y for y in ys if pinv(y) > tinv(y)), None) if up else None
    out.checks["pinv_le_tinv"] = Check(bad is None, None if bad is None else (bad,))

    direct = next((y for y in ys if tinv(y) != weak_inverse_at(t, y)), None)
    out.checks["closed_form_matches_definition"] = Check(direct is None, None if direct is None else (direct,))
    return out
