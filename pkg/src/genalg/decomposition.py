"""Gap structure of the range of a left-continuous non-decreasing generator.

The range M of such a t is described by its gaps: closed intervals
[b, d] of positive length whose interior misses M, with b always attained.
From the gaps we get the projection G_M onto M, the induced operation
x ⊗ y = G_M(F(x, y)) on M, and the injective restriction t* of t.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .generators import (
    Direction,
    DomainError,
    PiecewiseMonotone,
    plateau_data,
    range_of,
)
from .inverses import validate_cached, weak_pseudo_inverse
from .numerics import INF, ExtReal, IntervalPointSet, Part, ext, fmt, normalize
from .semigroups import PreconditionViolated, SemigroupDescriptor, f_eval


@dataclass(frozen=True)
class Gap:
    b: ExtReal
    d: ExtReal
    c: ExtReal
    d_in_range: bool = False

    @property
    def proper(self) -> bool:
        return self.b < self.d

    def interior(self) -> IntervalPointSet:
        """``[b, d]`` minus the range: ``(b, d)`` or ``(b, d]``."""
        if not self.proper:
            return IntervalPointSet.empty()
        return normalize([Part(self.b, False, self.d, not self.d_in_range)])

    def to_json(self) -> dict:
        return {"b": fmt(self.b), "d": fmt(self.d), "c": fmt(self.c)}


@dataclass(frozen=True)
class RangeDecomposition:
    t0: ExtReal
    gaps: tuple
    extra_points: tuple
    M: IntervalPointSet = field(compare=False)

    @property
    def degenerate(self) -> bool:
        return len(self.gaps) == 1 and not self.gaps[0].proper

    @property
    def proper_gaps(self) -> tuple:
        return tuple(g for g in self.gaps if g.proper)

    @property
    def U(self) -> list:
        return [(g.b, g.d) for g in self.gaps]

    @property
    def V(self) -> list:
        pts = {g.c for g in self.gaps} | set(self.extra_points)
        return sorted(pts)

    def reconstruct(self) -> IntervalPointSet:
        """``V ∪ ([t0, inf] minus the union of the gaps)``."""
        covered = normalize([Part(g.b, True, g.d, True) for g in self.proper_gaps])
        rest = covered.complement(self.t0, INF)
        return rest.union(IntervalPointSet.points(self.V))

    def to_json(self) -> dict:
        return {
            "t0": fmt(self.t0),
            "gaps": [g.to_json() for g in self.gaps],
            "extra_points": [fmt(p) for p in self.extra_points],
        }

    def describe(self) -> str:
        u = ", ".join(f"[{fmt(b)},{fmt(d)}]" for b, d in self.U)
        v = ", ".join(fmt(c) for c in self.V)
        return f"U = {{{u}}}, V = {{{v}}}"


def decompose(t: PiecewiseMonotone) -> RangeDecomposition:
    """The gap pair (U, V) of the range of t."""
    rep = validate_cached(t)
    if t.direction is not Direction.NON_DECREASING:
        raise PreconditionViolated("decomposition needs a non-decreasing generator")
    if not rep.left_continuous:
        raise PreconditionViolated("decomposition needs a left-continuous generator")
    M = range_of(t)
    t0 = t(t.domain[0])
    holes = M.complement(t0, INF)
    if holes.is_empty():
        return RangeDecomposition(t0, (Gap(INF, INF, INF, True),), (), M)
    gaps = []
    for h in holes.parts:
        b, d = h.lo, h.hi
        if b not in M:
            # left continuity forces the lower end of each gap into the range
            raise PreconditionViolated(f"gap below {fmt(d)} has an unattained lower end {fmt(b)}")
        gaps.append(Gap(b, d, b, d in M))
    bs = {g.b for g in gaps}
    extra = tuple(g.d for g in gaps if g.d_in_range and g.d not in bs)
    return RangeDecomposition(t0, tuple(gaps), extra, M)


def g_m(dec: RangeDecomposition, x) -> ExtReal:
    """Projection of [0, inf] onto M: below t0 to t0, inside a gap to its b."""
    x = ext(x)
    if x <= dec.t0:
        return dec.t0
    if x in dec.M:
        return x
    for g in dec.proper_gaps:
        if g.b < x <= g.d:
            return g.b
    raise DomainError(f"{fmt(x)} is neither in the range nor in a gap")


def otimes(dec: RangeDecomposition, F: SemigroupDescriptor, x, y) -> ExtReal:
    x, y = ext(x), ext(y)
    for v in (x, y):
        if v not in dec.M:
            raise DomainError(f"{fmt(v)} is not in the range")
    return g_m(dec, f_eval(F, x, y))


@dataclass
class StarSystem:
    """The restriction t* of t to the injectivity set D and the operation F* on D."""

    t: PiecewiseMonotone
    F: SemigroupDescriptor
    D: IntervalPointSet
    tinv: PiecewiseMonotone
    dec: RangeDecomposition

    def t_star(self, x) -> ExtReal:
        x = ext(x)
        if x not in self.D:
            raise DomainError(f"{fmt(x)} is outside the injectivity set")
        return self.t(x)

    def f_star(self, x, y) -> ExtReal:
        return self.tinv(f_eval(self.F, self.t_star(x), self.t_star(y)))

    def round_trip_range(self, x, y) -> tuple:
        """``(x ⊗ y, t*(F*(t^[-1](x), t^[-1](y))))`` for x, y in M."""
        lhs = otimes(self.dec, self.F, x, y)
        rhs = self.t_star(self.f_star(self.tinv(x), self.tinv(y)))
        return lhs, rhs

    def round_trip_domain(self, x, y) -> tuple:
        """``(F*(x, y), t^[-1](t*(x) ⊗ t*(y)))`` for x, y in D."""
        lhs = self.f_star(x, y)
        rhs = self.tinv(otimes(self.dec, self.F, self.t_star(x), self.t_star(y)))
        return lhs, rhs


def star_system(t: PiecewiseMonotone, F: SemigroupDescriptor, dec: Optional[RangeDecomposition] = None) -> StarSystem:
    dec = dec or decompose(t)
    return StarSystem(t, F, plateau_data(t).D, weak_pseudo_inverse(t), dec)
