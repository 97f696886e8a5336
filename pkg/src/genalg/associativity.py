"""The generated operation T(x, y) = t^[-1](F(t(x), t(y))) and its associativity.

Associativity of T is decided exactly through the F-condition on the range M
of a left-continuous non-decreasing t.  Every quantifier over y in M, over the
gap slices of M and over the hulls built from them becomes a finite union of
linear systems (see :mod:`genalg._systems`); the set of y at which a condition
fails is the exact projection of those systems onto y.

Two refinements keep the condition equivalent to associativity:

* a gap slice collects the x with F(x, y) in the gap *interior*, i.e. the
  part of [b, d] missing from M (so a right end d that lies in M is left out);
* in F(H, M_y) and F(M^y, H) the second argument is finite, since F(h, inf)
  is inf for every h and carries no information about the hull.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _systems as sy
from ._systems import Const, In, Ne, Op, Problem, Rel, Var
from .decomposition import RangeDecomposition, decompose, g_m
from .generators import Direction, PiecewiseMonotone, range_of
from .inverses import validate_cached, weak_pseudo_inverse
from .numerics import (
    INF,
    ExtReal,
    IntervalPointSet,
    Part,
    ext,
    f_image,
    fmt,
    normalize,
    o_hull,
)
from .semigroups import (
    Kind,
    PreconditionViolated,
    SemigroupDescriptor,
    f_eval,
    preimage_right,
    solve_right,
)


class Mode(enum.Enum):
    NORM = "norm"
    SUPCONORM = "supconorm"


class Verdict(enum.Enum):
    ASSOCIATIVE = "ASSOCIATIVE"
    NOT_ASSOCIATIVE = "NOT_ASSOCIATIVE"
    UNKNOWN = "UNKNOWN"


ALL = IntervalPointSet.of((0, True, INF, True))


@dataclass
class GeneratedOp:
    t: PiecewiseMonotone
    F: SemigroupDescriptor
    tinv: PiecewiseMonotone
    mode: Mode
    dec: Optional[RangeDecomposition] = None
    _memo: dict = field(default_factory=dict, repr=False)

    def T(self, x, y) -> ExtReal:
        key = (x, y)
        v = self._memo.get(key)
        if v is None:
            x, y = ext(x), ext(y)
            v = self.tinv(f_eval(self.F, self.t(x), self.t(y)))
            self._memo[key] = v
        return v

    __call__ = T

    @property
    def M(self) -> IntervalPointSet:
        return self.dec.M if self.dec is not None else range_of(self.t)

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "semigroup": self.F.to_json(),
            "generator": self.t.to_json(),
            "weak_pseudo_inverse": self.tinv.to_json(),
        }


def build_generated_op(t: PiecewiseMonotone, F: SemigroupDescriptor, mode=None) -> GeneratedOp:
    rep = validate_cached(t)
    if mode is None:
        mode = Mode.SUPCONORM if t.direction is Direction.NON_DECREASING else Mode.NORM
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    want = Direction.NON_DECREASING if mode is Mode.SUPCONORM else Direction.NON_INCREASING
    if t.direction is not want:
        raise PreconditionViolated(f"{mode.value} mode needs a {want.value} generator")
    dec = None
    if mode is Mode.SUPCONORM and rep.left_continuous:
        dec = decompose(t)
    return GeneratedOp(t, F, weak_pseudo_inverse(t), mode, dec)


# generator condition ---------------------------------------------------------
@dataclass
class ConditionOutcome:
    holds: bool
    mode: Mode
    threshold: ExtReal
    image: IntervalPointSet
    allowed: IntervalPointSet
    witness: Optional[tuple] = None  # (a, b) in M with F(a, b) outside the allowed set
    witness_args: Optional[tuple] = None  # preimages in [0, 1]

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "mode": self.mode.value,
            "threshold": fmt(self.threshold),
            "image": self.image.to_json(),
            "allowed": self.allowed.to_json(),
            "witness": None if self.witness is None else [fmt(v) for v in self.witness],
            "witness_args": None if self.witness_args is None else [fmt(v) for v in self.witness_args],
        }


def _image(F, A: IntervalPointSet, B: IntervalPointSet) -> IntervalPointSet:
    if F.kind is Kind.TABLE:
        return IntervalPointSet.points(f_eval(F, a, b) for a in A.elements() for b in B.elements())
    return f_image(F, A, B)


def check_generator_condition(t: PiecewiseMonotone, F: SemigroupDescriptor, mode=None) -> ConditionOutcome:
    """Whether F(M, M) stays inside M ∪ [threshold, inf].

    The threshold is t(1-) for a non-decreasing t and t(0+) for a
    non-increasing one.
    """
    if mode is None:
        mode = Mode.SUPCONORM if t.direction is Direction.NON_DECREASING else Mode.NORM
    mode = Mode(mode) if not isinstance(mode, Mode) else mode
    lo, hi = t.domain
    thr = t.left_limit(hi) if mode is Mode.SUPCONORM else t.right_limit(lo)
    M = range_of(t)
    image = _image(F, M, M)
    allowed = M.union(IntervalPointSet.of((thr, True, INF, True)))
    bad = image.difference(allowed)
    if bad.is_empty():
        return ConditionOutcome(True, mode, thr, image, allowed)
    if F.kind is Kind.TABLE:
        a, b = next((a, b) for a in M.elements() for b in M.elements() if f_eval(F, a, b) in bad)
    else:
        pt = sy.sample(Problem(F, [M, M], [In(Op(Var(0), Var(1)), bad)]))
        a, b = pt
    tinv = weak_pseudo_inverse(t)
    return ConditionOutcome(False, mode, thr, image, allowed, (a, b), (tinv(a), tinv(b)))


# the F-condition -------------------------------------------------------------
@dataclass(frozen=True)
class GapIndex:
    """A gap of M, or the virtual index for [0, t0) with representative t0."""

    label: str
    rep: ExtReal
    interior: IntervalPointSet
    below: bool = False  # True for the virtual index: values sit below rep

    def to_json(self) -> dict:
        return {"index": self.label, "rep": fmt(self.rep), "interior": self.interior.to_json()}


def gap_indices(dec: RangeDecomposition) -> list:
    out = [GapIndex(str(i), g.b, g.interior()) for i, g in enumerate(dec.proper_gaps)]
    if dec.t0 > 0:
        out.append(GapIndex("tau", dec.t0, IntervalPointSet.of((0, True, dec.t0, False)), True))
    return out


def _sets(dec: RangeDecomposition) -> tuple:
    M = dec.M
    fin = M.intersection(IntervalPointSet.of((0, True, INF, False)))
    star = M.difference(IntervalPointSet.points([dec.t0]))
    return M, fin, star


def _hull_reqs(k: GapIndex, w, v) -> list:
    """w lies in the hull of {rep} and the values v: rep < w <= v, or v < w <= rep."""
    if k.below:
        return [Rel(v, "<", w), Rel(w, "<=", Const(k.rep))]
    return [Rel(Const(k.rep), "<", w), Rel(w, "<=", v)]


def _f(a, b):
    return Op(a, b)


Y, X1, X2, X3, X4 = (Var(i) for i in range(5))


def c1_problems(F, dec, k: GapIndex) -> tuple:
    """(I-problem, H-problem) for the left condition; y is variable 0 in both."""
    M, fin, star = _sets(dec)
    I = Problem(F, [M, M, M], [
        In(_f(X1, Y), k.interior),
        In(_f(Y, X2), M),
        Ne(_f(_f(X1, Y), X2), _f(Const(k.rep), X2)),
    ], ["y", "x1", "x2"])
    # y, x (slice element), z (finite, F(y,z) in M), w (hull point)
    H = Problem(F, [M, M, fin, ALL], [
        In(_f(X1, Y), k.interior),
        In(_f(Y, X2), M),
        *_hull_reqs(k, X3, _f(X1, Y)),
        In(_f(X3, X2), star),
    ], ["y", "x", "z", "w"])
    return I, H


def c2_problems(F, dec, k: GapIndex) -> tuple:
    M, fin, star = _sets(dec)
    I = Problem(F, [M, M, M], [
        In(_f(X1, Y), M),
        In(_f(Y, X2), k.interior),
        Ne(_f(X1, _f(Y, X2)), _f(X1, Const(k.rep))),
    ], ["y", "x1", "x2"])
    H = Problem(F, [M, fin, M, ALL], [
        In(_f(X1, Y), M),
        In(_f(Y, X2), k.interior),
        *_hull_reqs(k, X3, _f(Y, X2)),
        In(_f(X1, X3), star),
    ], ["y", "x1", "z", "w"])
    return I, H


def c3_problems(F, dec, k: GapIndex, l: GapIndex) -> tuple:
    """(I-problem, list of J-hit problems) for the pair (k, l)."""
    M, fin, star = _sets(dec)
    I = Problem(F, [M, M, M], [
        In(_f(X1, Y), k.interior),
        In(_f(Y, X2), l.interior),
        Ne(_f(Const(k.rep), X2), _f(X1, Const(l.rep))),
    ], ["y", "x1", "x2"])
    rk, rl = Const(k.rep), Const(l.rep)
    # y, xa in the left slice, za in the right slice, one more element, s
    left = [In(_f(X1, Y), k.interior), In(_f(Y, X2), l.interior)]
    a1, a2 = _f(X1, rl), _f(rk, X2)
    b1, b2 = _f(X3, rl), _f(rk, X3)
    J = [
        Problem(F, [M, M, M, star], left + [Rel(a1, "<", Var(3)), Rel(Var(3), "<=", a2)], ["y", "xa", "za", "s"]),
        Problem(F, [M, M, M, star], left + [Rel(a2, "<", Var(3)), Rel(Var(3), "<=", a1)], ["y", "xa", "za", "s"]),
        Problem(F, [M, M, M, M, star], left + [In(_f(X3, Y), k.interior), Rel(a1, "<", X4), Rel(X4, "<=", b1)],
                ["y", "xa", "za", "xb", "s"]),
        Problem(F, [M, M, M, M, star], left + [In(_f(Y, X3), l.interior), Rel(a2, "<", X4), Rel(X4, "<=", b2)],
                ["y", "xa", "za", "zb", "s"]),
    ]
    return I, J


def _union(projs: list) -> sy.Projection:
    g = projs[0].g
    pieces = []
    for p in projs:
        for pc in p.pieces:
            if pc not in pieces:
                pieces.append(pc)
    return sy.Projection(g, pieces)


def _intersect(a: sy.Projection, b: sy.Projection) -> sy.Projection:
    """Pairwise intersection of convex pieces (kept symbolic)."""
    g = a.g
    out = []
    for p in a.pieces:
        for q in b.pieces:
            if sy._meet(g, p, q):
                out.append(_meet_piece(g, p, q))
    return sy.Projection(g, out)


def _meet_piece(g, p, q):
    from . import _polyhedra as ph

    if p.at_inf:
        return p
    lo, lo_s = p.iv.lo, p.iv.lo_strict
    if q.iv.lo is not None:
        c = ph.cmp_bounds(g, q.iv.lo, lo) if lo is not None else 1
        if c > 0 or (c == 0 and q.iv.lo_strict):
            lo, lo_s = q.iv.lo, q.iv.lo_strict
    hi, hi_s = p.iv.hi, p.iv.hi_strict
    if q.iv.hi is not None:
        c = ph.cmp_bounds(g, q.iv.hi, hi) if hi is not None else -1
        if c < 0 or (c == 0 and q.iv.hi_strict):
            hi, hi_s = q.iv.hi, q.iv.hi_strict
    return sy.Piece1D(ph.Interval1D(lo, lo_s, hi, hi_s))


@dataclass
class ConditionRecord:
    condition: str
    k: str
    l: Optional[str]
    slice_y: IntervalPointSet  # y with the I-set non-empty
    hit_y: IntervalPointSet  # y where the hull image meets M minus {t0}
    fail_y: IntervalPointSet
    exact: bool
    _fail: object = field(default=None, repr=False)

    @property
    def holds(self) -> bool:
        return self._fail.is_empty()

    def to_json(self) -> dict:
        out = {
            "condition": self.condition,
            "k": self.k,
            "i_nonempty_y": self.slice_y.to_json(),
            "hit_y": self.hit_y.to_json(),
            "fail_y": self.fail_y.to_json(),
            "holds": self.holds,
            "exact": self.exact,
        }
        if self.l is not None:
            out["l"] = self.l
        return out


def _record(cond, k, l, iproj, hproj) -> ConditionRecord:
    fail = _intersect(iproj, hproj)
    s1, e1 = iproj.to_set()
    s2, e2 = hproj.to_set()
    s3, e3 = fail.to_set()
    return ConditionRecord(cond, k, l, s1, s2, s3, e1 and e2 and e3, fail)


@dataclass
class Witness:
    x: ExtReal
    y: ExtReal
    z: ExtReal
    lhs: ExtReal
    rhs: ExtReal
    values: Optional[tuple] = None  # the triple in M
    case: str = ""

    def to_json(self) -> dict:
        out = {
            "x": fmt(self.x),
            "y": fmt(self.y),
            "z": fmt(self.z),
            "lhs": fmt(self.lhs),
            "rhs": fmt(self.rhs),
        }
        if self.values is not None:
            out["range_values"] = [fmt(v) for v in self.values]
        if self.case:
            out["case"] = self.case
        return out


@dataclass
class CellRecord:
    y_cell: IntervalPointSet
    sample_y: ExtReal
    entries: list

    def to_json(self) -> dict:
        return {"y_cell": self.y_cell.to_json(), "sample_y": fmt(self.sample_y), "entries": self.entries}


@dataclass
class ConditionReport:
    verdict: Verdict
    witness: Optional[Witness]
    records: list
    cells: list
    note: str = ""

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "conditions": [r.to_json() for r in self.records],
            "cells": [c.to_json() for c in self.cells],
            "note": self.note,
        }


def _require_decomposition(genop: GeneratedOp) -> RangeDecomposition:
    if genop.dec is None:
        raise PreconditionViolated("the F-condition needs a left-continuous non-decreasing generator")
    return genop.dec


def f_condition_check(genop: GeneratedOp, with_cells: bool = True) -> ConditionReport:
    """Exact associativity decision for T through the F-condition of M."""
    dec = _require_decomposition(genop)
    F = genop.F
    if F.kind is Kind.TABLE:
        return _table_check(genop)
    ks = gap_indices(dec)
    records = []
    for k in ks:
        for cond, build in (("C1", c1_problems), ("C2", c2_problems)):
            I, H = build(F, dec, k)
            records.append(_record(cond, k.label, None, sy.project(I, 0), sy.project(H, 0)))
    for k, l in itertools.product(ks, repeat=2):
        I, Js = c3_problems(F, dec, k, l)
        records.append(_record("C3", k.label, l.label, sy.project(I, 0), _union([sy.project(J, 0) for J in Js])))
    failed = [r for r in records if not r.holds]
    cells = _cells(genop, ks, records) if with_cells else []
    if not failed:
        return ConditionReport(Verdict.ASSOCIATIVE, None, records, cells)
    w = find_witness(genop)
    if w is None:
        return ConditionReport(
            Verdict.UNKNOWN, None, records, cells,
            "a condition fails but no rational witness triple was found",
        )
    return ConditionReport(Verdict.NOT_ASSOCIATIVE, w, records, cells)


def _verify(genop: GeneratedOp, vals, case: str) -> Optional[Witness]:
    x, y, z = (genop.tinv(v) for v in vals)
    lhs = genop.T(genop.T(x, y), z)
    rhs = genop.T(x, genop.T(y, z))
    if lhs == rhs:
        return None
    return Witness(x, y, z, lhs, rhs, tuple(vals), case)


def deviation_problems(F, dec) -> list:
    """Systems in (x, y, z, s) whose points are triples of M where ⊗ is not associative.

    With g the value x ⊗ y or y ⊗ z jumps to, the two bracketings differ
    exactly when some s in M minus {t0} separates F(g, z) from F(F(x, y), z)
    (and the mirror image), or F(g_k, z) from F(x, g_l) when both inner
    values fall outside M.
    """
    M, fin, star = _sets(dec)
    x, y, z, s = (Var(i) for i in range(4))
    ks = gap_indices(dec)
    out = []
    for k in ks:
        lo, hi = _f(Const(k.rep), z), _f(_f(x, y), z)
        if k.below:
            lo, hi = hi, lo
        out.append((f"left:{k.label}", Problem(F, [M, M, M, star], [
            In(_f(x, y), k.interior), In(_f(y, z), M), Rel(lo, "<", s), Rel(s, "<=", hi)])))
    for l in ks:
        lo, hi = _f(x, Const(l.rep)), _f(x, _f(y, z))
        if l.below:
            lo, hi = hi, lo
        out.append((f"right:{l.label}", Problem(F, [M, M, M, star], [
            In(_f(x, y), M), In(_f(y, z), l.interior), Rel(lo, "<", s), Rel(s, "<=", hi)])))
    for k, l in itertools.product(ks, repeat=2):
        a, b = _f(Const(k.rep), z), _f(x, Const(l.rep))
        for lo, hi in ((a, b), (b, a)):
            out.append((f"both:{k.label},{l.label}", Problem(F, [M, M, M, star], [
                In(_f(x, y), k.interior), In(_f(y, z), l.interior), Rel(lo, "<", s), Rel(s, "<=", hi)])))
    return out


def find_witness(genop: GeneratedOp) -> Optional[Witness]:
    """A rational triple in [0, 1] where T is not associative, verified directly."""
    dec = _require_decomposition(genop)
    found = {}
    for case, prob in deviation_problems(genop.F, dec):
        def accept(pt, case=case):
            w = _verify(genop, pt[:3], case)
            found["w"] = w
            return w is not None

        if sy.sample(prob, accept=accept) is not None:
            return found["w"]
    return None


def _table_check(genop: GeneratedOp) -> ConditionReport:
    """Finite carrier: enumerate ⊗ on M directly."""
    dec = genop.dec
    F = genop.F
    if not dec.M.is_finite_set():
        raise PreconditionViolated("a table semigroup needs a generator with finitely many values")
    pts = dec.M.elements()
    for a, b, c in itertools.product(pts, repeat=3):
        ab = g_m(dec, f_eval(F, a, b))
        bc = g_m(dec, f_eval(F, b, c))
        if g_m(dec, f_eval(F, ab, c)) != g_m(dec, f_eval(F, a, bc)):
            w = _verify(genop, (a, b, c), "table")
            if w is not None:
                return ConditionReport(Verdict.NOT_ASSOCIATIVE, w, [], [], "finite enumeration of the range")
            return ConditionReport(Verdict.UNKNOWN, None, [], [], "range triple did not transfer to [0, 1]")
    return ConditionReport(Verdict.ASSOCIATIVE, None, [], [], "finite enumeration of the range")


# cells in y --------------------------------------------------------------------
def critical_values(F, dec) -> list:
    M = dec.M
    P = [e for e in M.endpoints() if e != INF]
    Q = set(P) | {dec.t0}
    for g in dec.proper_gaps:
        Q |= {v for v in (g.b, g.d) if v != INF}
    crit = set(v for v in P if v in M)
    for p in P:
        for q in Q:
            for y in solve_right(F, p, q):
                if y in M:
                    crit.add(y)
    return sorted(crit)


def y_cells(F, dec) -> list:
    crit = critical_values(F, dec)
    cells = []
    for part in dec.M.parts:
        inner = [c for c in crit if part.contains(c)]
        cuts = sorted(set(inner))
        lo, lo_c = part.lo, part.lo_closed
        for c in cuts:
            if c > lo or (c == lo and not lo_c):
                cells.append(Part(lo, lo_c, c, False))
            cells.append(Part(c, True, c, True))
            lo, lo_c = c, False
        cells.append(Part(lo, lo_c, part.hi, part.hi_closed))
    out = []
    for c in cells:
        for q in normalize([c]).parts:
            out.extend(sy._pieces(IntervalPointSet((q,))))
    return out


def _cells(genop: GeneratedOp, ks, records) -> list:
    F, dec = genop.F, genop.dec
    M, fin, star = _sets(dec)
    by_key = {(r.condition, r.k, r.l): r for r in records}
    out = []
    for cell in y_cells(F, dec):
        if cell.is_point:
            y = cell.lo
        elif cell.hi == INF:
            y = cell.lo + 1
        else:
            y = (cell.lo + cell.hi) / 2
        cell_set = IntervalPointSet((cell,))
        My = preimage_right(F, y, M, M)
        entries = []
        slices = {}
        for k in ks:
            Mk = preimage_right(F, y, k.interior, M)
            slices[k.label] = Mk
            if Mk.is_empty():
                continue
            H = o_hull(IntervalPointSet.points([k.rep]).union(f_image(F, Mk, IntervalPointSet.points([y]))))
            Myf = My.intersection(fin)
            hit = f_image(F, H, Myf).intersection(star) if not (H.is_empty() or Myf.is_empty()) else IntervalPointSet.empty()
            rec = by_key[("C1", k.label, None)]
            entries.append({
                "condition": "C1/C2",
                "k": k.label,
                "slice": Mk.to_json(),
                "hull": H.to_json(),
                "hull_image_in_range": hit.to_json(),
                "fail_y_meets_cell": rec._fail.meets_set(cell_set),
            })
        for k, l in itertools.product(ks, repeat=2):
            A, B = slices[k.label], slices[l.label]
            if A.is_empty() or B.is_empty():
                continue
            J = o_hull(
                f_image(F, A, IntervalPointSet.points([l.rep])).union(
                    f_image(F, IntervalPointSet.points([k.rep]), B)
                )
            )
            rec = by_key[("C3", k.label, l.label)]
            entries.append({
                "condition": "C3",
                "k": k.label,
                "l": l.label,
                "J": J.to_json(),
                "J_in_range": J.intersection(star).to_json(),
                "fail_y_meets_cell": rec._fail.meets_set(cell_set),
            })
        out.append(CellRecord(cell_set, y, entries))
    return out


# the T sets ---------------------------------------------------------------------
@dataclass
class FrakT:
    T1: IntervalPointSet
    T2: IntervalPointSet
    T3: IntervalPointSet
    exact: bool
    _proj: object = field(default=None, repr=False)

    @property
    def T(self) -> IntervalPointSet:
        return self.T1.union(self.T2).union(self.T3)

    def meets(self, S: IntervalPointSet) -> bool:
        """Exact test of whether the union of the three sets meets S."""
        return self._proj.meets_set(S)

    def to_json(self) -> dict:
        return {
            "T1": self.T1.to_json(),
            "T2": self.T2.to_json(),
            "T3": self.T3.to_json(),
            "T": self.T.to_json(),
            "exact": self.exact,
        }


def frak_t(dec: RangeDecomposition, F: SemigroupDescriptor) -> FrakT:
    """The three hull-image sets of M, computed exactly by projection onto s."""
    if F.kind is Kind.TABLE:
        raise PreconditionViolated("the hull-image sets need a built-in F")
    M, fin, star = _sets(dec)
    ks = gap_indices(dec)
    y, x, z, w, s = (Var(i) for i in range(5))
    p1, p2, p3 = [], [], []
    for k in ks:
        p1.append(sy.project(Problem(F, [M, M, fin, ALL, ALL], [
            In(_f(x, y), k.interior), In(_f(y, z), M), *_hull_reqs(k, w, _f(x, y)),
            Rel(s, "<=", _f(w, z)), Rel(_f(w, z), "<=", s)]), 4))
        p2.append(sy.project(Problem(F, [M, fin, M, ALL, ALL], [
            In(_f(x, y), M), In(_f(y, z), k.interior), *_hull_reqs(k, w, _f(y, z)),
            Rel(s, "<=", _f(x, w)), Rel(_f(x, w), "<=", s)]), 4))
    for k, l in itertools.product(ks, repeat=2):
        _, Js = c3_problems(F, dec, k, l)
        for J in Js:
            # same systems with s ranging over all of [0, inf]
            J = Problem(F, J.domains[:-1] + [ALL], J.reqs, J.names)
            p3.append(sy.project(J, J.n - 1))
    g = sy.group_for(F)
    projs = [sy.Projection(g, []) if not p else _union(p) for p in (p1, p2, p3)]
    sets = [p.to_set() for p in projs]
    return FrakT(sets[0][0], sets[1][0], sets[2][0], all(e for _, e in sets), _union(projs))


# brute force ----------------------------------------------------------------------
def default_grid(genop: GeneratedOp, refine: int = 2) -> list:
    """Breakpoints of t, t^[-1] of the range endpoints, 0 and 1, refined by midpoints."""
    t = genop.t
    lo, hi = t.domain
    pts = {lo, hi}
    pts |= {b for b in t.breakpoints() if lo <= b <= hi}
    for e in genop.M.endpoints():
        pts.add(genop.tinv(e))
    if genop.dec is not None:
        for g in genop.dec.proper_gaps:
            pts.add(genop.tinv(g.b))
            pts.add(genop.tinv(g.d))
    pts = sorted(p for p in pts if lo <= p <= hi)
    # two rounds of midpoints: violations typically need a value strictly
    # inside a piece, away from the centre
    for _ in range(refine):
        pts = sorted(set(pts) | {(a + b) / 2 for a, b in zip(pts, pts[1:])})
    return pts


def brute_force_assoc(genop: GeneratedOp, grid=None, all_witnesses: bool = False):
    """First triple (lexicographic in the grid) with T(T(x,y),z) != T(x,T(y,z)).

    With ``all_witnesses`` the full list is returned instead.
    """
    grid = sorted({ext(g) for g in (grid if grid is not None else default_grid(genop))})
    T = genop.T
    found = []
    for x, y, z in itertools.product(grid, repeat=3):
        lhs = T(T(x, y), z)
        rhs = T(x, T(y, z))
        if lhs != rhs:
            w = Witness(x, y, z, lhs, rhs)
            if not all_witnesses:
                return w
            found.append(w)
    return found if all_witnesses else None
