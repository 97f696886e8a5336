"""Existential constraint problems over values in [0, inf] built from F.

A :class:`Problem` has variables ranging over interval-point sets and a list
of requirements (membership of an F-expression in a set, order relations,
inequality).  Expanding all disjunctions (which part of a union, which branch
of a max, whether a variable is infinite) yields conjunctive linear systems
that :mod:`genalg._polyhedra` decides exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _polyhedra as ph
from .numerics import INF, IntervalPointSet, Part, _split_inf, f_image, normalize
from .semigroups import Kind, SemigroupDescriptor


# expressions ---------------------------------------------------------------
@dataclass(frozen=True)
class Var:
    i: int


@dataclass(frozen=True)
class Const:
    value: object


@dataclass(frozen=True)
class Op:
    a: object
    b: object


def variables(e) -> set:
    if isinstance(e, Var):
        return {e.i}
    if isinstance(e, Op):
        return variables(e.a) | variables(e.b)
    return set()


@dataclass(frozen=True)
class Lin:
    coeffs: tuple
    const: object


def group_for(F: SemigroupDescriptor):
    if F.kind is Kind.LINPROD:
        return ph.MultiplicativeGroup
    if F.kind in (Kind.SUM, Kind.MAX):
        return ph.AdditiveGroup
    raise ValueError(f"no linear encoding for {F.kind.value}")


# requirements ----------------------------------------------------------------
@dataclass(frozen=True)
class In:
    e: object
    S: IntervalPointSet


@dataclass(frozen=True)
class Rel:
    a: object
    op: str  # "<" or "<="
    b: object


@dataclass(frozen=True)
class Ne:
    a: object
    b: object


def req_vars(r) -> set:
    if isinstance(r, In):
        return variables(r.e)
    return variables(r.a) | variables(r.b)


@dataclass
class Problem:
    F: SemigroupDescriptor
    domains: list
    reqs: list
    names: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.domains)


def _pieces(S: IntervalPointSet) -> list:
    return [q for p in S.parts for q in _split_inf(p)]


class _Ctx:
    def __init__(self, F, n):
        self.F = F
        self.g = group_for(F)
        self.n = n
        self.zero = (0,) * n

    def unit(self, i):
        return tuple(1 if j == i else 0 for j in range(self.n))

    # box ranges for pruning
    def box(self, e, parts) -> IntervalPointSet:
        if isinstance(e, Var):
            return IntervalPointSet((parts[e.i],))
        if isinstance(e, Const):
            return IntervalPointSet.points([e.value])
        return f_image(self.F, self.box(e.a, parts), self.box(e.b, parts))

    # linear cases
    def lin(self, e, parts) -> list:
        """List of (rows, value) with value a Lin or INF."""
        if isinstance(e, Var):
            p = parts[e.i]
            if p.lo == INF:
                return [([], INF)]
            return [([], Lin(self.unit(e.i), self.g.identity))]
        if isinstance(e, Const):
            if e.value == INF:
                return [([], INF)]
            return [([], Lin(self.zero, self.g.embed(e.value)))]
        out = []
        for (ra, va), (rb, vb) in itertools.product(self.lin(e.a, parts), self.lin(e.b, parts)):
            rows = ra + rb
            if va == INF or vb == INF:
                out.append((rows, INF))
            elif self.F.kind is Kind.MAX:
                ge = self.rel(vb, "<=", va)
                lt = self.rel(va, "<", vb)
                if ge is not False:
                    out.append((rows + ([] if ge is True else [ge]), va))
                if lt is not False:
                    out.append((rows + ([] if lt is True else [lt]), vb))
            else:
                coeffs = tuple(x + y for x, y in zip(va.coeffs, vb.coeffs))
                out.append((rows, Lin(coeffs, self.g.op(va.const, vb.const))))
        return out

    def rel(self, a, op, b):
        """Row for ``a op b``, or a bool when decided outright."""
        strict = op == "<"
        if a == INF and b == INF:
            return not strict
        if a == INF:
            return False
        if b == INF:
            return True
        coeffs = tuple(x - y for x, y in zip(a.coeffs, b.coeffs))
        const = self.g.op(a.const, self.g.inv(b.const))
        if not any(coeffs):
            s = self.g.sign(const)
            return s < 0 or (s == 0 and not strict)
        return ph.Row(coeffs, const, strict)

    def member(self, v, p: Part):
        """Rows for value v in part p, or False."""
        if v == INF:
            return [] if p.lo == INF else False
        if p.lo == INF:
            return False
        rows = []
        for r in (
            self.rel(Lin(self.zero, self.g.embed(p.lo)), "<=" if p.lo_closed else "<", v),
            True if p.hi == INF else self.rel(v, "<=" if p.hi_closed else "<", Lin(self.zero, self.g.embed(p.hi))),
        ):
            if r is False:
                return False
            if r is not True:
                rows.append(r)
        return rows

    def alternatives(self, r, parts) -> list:
        """Disjuncts (lists of rows) for one requirement under a part choice."""
        out = []
        if isinstance(r, In):
            rng = self.box(r.e, parts)
            pieces = [p for p in _pieces(r.S) if not rng.intersection(IntervalPointSet((p,))).is_empty()]
            for rows, v in self.lin(r.e, parts):
                for p in pieces:
                    m = self.member(v, p)
                    if m is not False:
                        out.append(rows + m)
            return out
        if isinstance(r, Rel):
            pairs = [(r.a, r.op, r.b)]
        else:
            pairs = [(r.a, "<", r.b), (r.b, "<", r.a)]
        for a, op, b in pairs:
            for (ra, va), (rb, vb) in itertools.product(self.lin(a, parts), self.lin(b, parts)):
                x = self.rel(va, op, vb)
                if x is False:
                    continue
                out.append(ra + rb + ([] if x is True else [x]))
        return out

    def prune(self, r, parts) -> bool:
        """True when interval arithmetic already rules the requirement out."""
        if isinstance(r, In):
            return self.box(r.e, parts).intersection(r.S).is_empty()
        a, b = self.box(r.a, parts), self.box(r.b, parts)
        if isinstance(r, Rel):
            if r.op == "<":
                return a.inf() >= b.sup()
            return a.inf() > b.sup()
        # a != b is impossible only when both are the same single point
        return a == b and len(a.parts) == 1 and a.parts[0].is_point


def leaves(problem: Problem):
    """Yield ``(parts, rows)`` for every feasible conjunctive case."""
    ctx = _Ctx(problem.F, problem.n)
    g = ctx.g
    by_last = {}
    for r in problem.reqs:
        vs = req_vars(r)
        by_last.setdefault(max(vs) if vs else -1, []).append(r)
    doms = [_pieces(D) for D in problem.domains]
    # base rows: each finite variable inside its part
    parts: list = [None] * problem.n

    def assign(i):
        if i == problem.n:
            yield list(parts)
            return
        for p in doms[i]:
            parts[i] = p
            if any(ctx.prune(r, parts) for r in by_last.get(i, ())):
                continue
            yield from assign(i + 1)
        parts[i] = None

    for r in by_last.get(-1, ()):
        if ctx.prune(r, [None] * problem.n):
            return
    for choice in assign(0):
        base = []
        ok = True
        for i, p in enumerate(choice):
            if p.lo == INF:
                continue
            m = ctx.member(Lin(ctx.unit(i), g.identity), p)
            if m is False:
                ok = False
                break
            base += m
        if not ok:
            continue
        alts = [ctx.alternatives(r, choice) for r in problem.reqs]
        if any(not a for a in alts):
            continue
        yield from _combine(g, choice, base, alts, 0)


def _combine(g, choice, rows, alts, j):
    if not ph.feasible(g, rows):
        return
    if j == len(alts):
        yield choice, rows
        return
    for extra in alts[j]:
        yield from _combine(g, choice, rows + extra, alts, j + 1)


# projections -------------------------------------------------------------------
@dataclass(frozen=True)
class Piece1D:
    """A convex piece of a projection, in group coordinates, or the point inf."""

    iv: Optional[ph.Interval1D]
    at_inf: bool = False


@dataclass
class Projection:
    g: object
    pieces: list

    def is_empty(self) -> bool:
        return not self.pieces

    def meets(self, other: "Projection") -> bool:
        return any(_meet(self.g, a, b) for a in self.pieces for b in other.pieces)

    def meets_set(self, S: IntervalPointSet) -> bool:
        return self.meets(projection_of_set(self.g, S))

    def to_set(self) -> tuple:
        """``(IntervalPointSet, exact)``; irrational ends are rounded outward."""
        parts = []
        exact = True
        for pc in self.pieces:
            if pc.at_inf:
                parts.append(Part(INF, True, INF, True))
                continue
            lo, e1 = _to_value(self.g, pc.iv.lo, down=True)
            hi, e2 = _to_value(self.g, pc.iv.hi, down=False)
            exact = exact and e1 and e2
            lo_c = not pc.iv.lo_strict if e1 else False
            hi_c = (not pc.iv.hi_strict if e2 else False) and hi != INF
            if lo is None:
                lo, lo_c = Fraction(0), True
            if hi is None:
                hi, hi_c = INF, False
            parts.append(Part(max(lo, Fraction(0)), lo_c, hi, hi_c))
        return normalize([p for p in parts if not p.is_empty()]), exact


def _to_value(g, b, down):
    if b is None:
        return None, True
    r = g.exact_root(b.c, b.n)
    if r is not None:
        return g.extract(r), True
    v = g.approx(b.c, b.n)
    f = Fraction(v).limit_denominator(10 ** 9)
    # round outward, confirming against the exact bound
    step = Fraction(1, 10 ** 9)
    while True:
        c = ph.cmp_bounds(g, ph.Bound(f, 1), b)
        if (down and c < 0) or (not down and c > 0):
            break
        f = f - step if down else f + step
    return g.extract(f), False


def projection_of_set(g, S: IntervalPointSet) -> Projection:
    pieces = []
    for p in _pieces(S):
        if p.lo == INF:
            pieces.append(Piece1D(None, True))
            continue
        lo = ph.Bound(g.embed(p.lo), 1)
        hi = None if p.hi == INF else ph.Bound(g.embed(p.hi), 1)
        pieces.append(Piece1D(ph.Interval1D(lo, not p.lo_closed, hi, not p.hi_closed)))
    return Projection(g, pieces)


def _meet(g, a: Piece1D, b: Piece1D) -> bool:
    if a.at_inf or b.at_inf:
        return a.at_inf and b.at_inf
    lo, lo_s = a.iv.lo, a.iv.lo_strict
    if b.iv.lo is not None:
        if lo is None:
            lo, lo_s = b.iv.lo, b.iv.lo_strict
        else:
            c = ph.cmp_bounds(g, b.iv.lo, lo)
            if c > 0 or (c == 0 and b.iv.lo_strict):
                lo, lo_s = b.iv.lo, b.iv.lo_strict
    hi, hi_s = a.iv.hi, a.iv.hi_strict
    if b.iv.hi is not None:
        if hi is None:
            hi, hi_s = b.iv.hi, b.iv.hi_strict
        else:
            c = ph.cmp_bounds(g, b.iv.hi, hi)
            if c < 0 or (c == 0 and b.iv.hi_strict):
                hi, hi_s = b.iv.hi, b.iv.hi_strict
    if lo is None or hi is None:
        return True
    c = ph.cmp_bounds(g, lo, hi)
    return c < 0 or (c == 0 and not lo_s and not hi_s)


def project(problem: Problem, keep: int) -> Projection:
    g = group_for(problem.F)
    pieces = []
    seen = set()
    for parts, rows in leaves(problem):
        if parts[keep].lo == INF:
            pc = Piece1D(None, True)
        else:
            iv = ph.project(g, rows, keep)
            if iv is None:
                continue
            pc = Piece1D(iv)
        if pc not in seen:
            seen.add(pc)
            pieces.append(pc)
    return Projection(g, pieces)


def any_leaf(problem: Problem) -> bool:
    for _ in leaves(problem):
        return True
    return False


def sample(problem: Problem, order=None, accept=None) -> Optional[list]:
    """A rational point satisfying every requirement, as ExtReal values.

    Cases are tried in enumeration order; ``accept`` may reject a point, in
    which case the next case is tried.
    """
    g = group_for(problem.F)
    for parts, rows in leaves(problem):
        finite = [i for i, p in enumerate(parts) if p.lo != INF]
        ordr = [i for i in (order or range(problem.n)) if i in finite]
        vals = ph.sample(g, rows, ordr) if rows else [None] * problem.n
        if vals is None:
            continue
        out = []
        for i, p in enumerate(parts):
            if p.lo == INF:
                out.append(INF)
            elif vals[i] is None:
                out.append(p.lo if p.lo_closed else _inside(p))
            else:
                out.append(g.extract(vals[i]))
        if accept is None or accept(out):
            return out
    return None


def _inside(p: Part):
    if p.hi == INF:
        return p.lo + 1
    return (p.lo + p.hi) / 2
