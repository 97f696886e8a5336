"""Analyzers for the generated operation: idempotence, limit property,
conditional cancellation, the t-supconorm test and continuity.

All analyzers work in SUPCONORM mode on a left-continuous non-decreasing t.
Every verdict is decided exactly on the range side; grid searches are only
used as cross-checks and are reported next to the exact result.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _systems as sy
from ._systems import Const, In, Op, Problem, Rel, Var
from .associativity import (
    GeneratedOp,
    Mode,
    Verdict,
    default_grid,
    f_condition_check,
)
from .generators import (
    PiecewiseMonotone,
    plateau_data,
    preimage,
    preimage_of_value,
)
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
    point,
)
from .semigroups import Kind, PreconditionViolated, SemigroupDescriptor, f_eval, idempotents_of

UNIT = IntervalPointSet.of((0, True, 1, True))
OPEN_UNIT = IntervalPointSet.of((0, False, 1, False))


def _require(genop: GeneratedOp, continuous: bool = False):
    if genop.mode is not Mode.SUPCONORM or genop.dec is None:
        raise PreconditionViolated("needs SUPCONORM mode with a left-continuous non-decreasing generator")
    if continuous and not genop.F.continuous:
        raise PreconditionViolated("needs a continuous F")
    return genop.dec


def _fmt_opt(v):
    return None if v is None else fmt(v)


# helpers on the generator ------------------------------------------------------
def image_on(t: PiecewiseMonotone, S: IntervalPointSet) -> IntervalPointSet:
    """``t(S)`` exactly, segment by segment."""
    out = []
    for s in t.segments:
        for q in normalize([s.part]).intersection(S).parts:
            if s.trend() == 0:
                out.append(point(s.formula(q.lo)))
                continue
            a, b = s.formula(q.lo), s.formula(q.hi)
            ac = q.lo_closed and a != INF
            bc = q.hi_closed and b != INF
            out.append(Part(a, ac, b, bc) if s.trend() > 0 else Part(b, bc, a, ac))
    return normalize(out)


def jump_points(t: PiecewiseMonotone) -> list:
    """Points of [0, 1) where t(x) < t(x+)."""
    hi = t.domain[1]
    return [b for b in t.breakpoints() if b < hi and t(b) != t.right_limit(b)]


def _right_value(t: PiecewiseMonotone, x) -> ExtReal:
    # at the right end of the carrier there is nothing to approach from
    return t(x) if x == t.domain[1] else t.right_limit(x)


def _pick(S: IntervalPointSet) -> ExtReal:
    """A simple element of a non-empty set."""
    p = S.parts[0]
    if p.lo_closed:
        return p.lo
    if p.hi_closed and p.hi == p.lo:
        return p.hi
    if p.hi == INF:
        return p.lo + 1
    return (p.lo + p.hi) / 2


def _sample(F, domains, reqs):
    """First point of a small existential problem, or None."""
    return sy.sample(Problem(F, list(domains), list(reqs)))


def _exists_value(F, S: IntervalPointSet, rel) -> Optional[ExtReal]:
    """Some v in S with ``rel(Var(0))`` true; rel builds the requirement list."""
    if S.is_empty():
        return None
    got = _sample(F, [S], rel(Var(0)))
    return None if got is None else got[0]


def _cmp_reqs(F, c, v, op: str, rhs) -> list:
    """Requirements for ``F(c, v) op rhs`` where c may be infinite."""
    lhs = Op(Const(c), v) if c != INF else None
    if lhs is None:
        # F(inf, v) = inf
        if op == "<":
            return [In(v, IntervalPointSet.empty())]
        return [In(rhs, IntervalPointSet.points([INF]))] if isinstance(rhs, Var) else []
    return [Rel(lhs, op, rhs)]


# idempotence -------------------------------------------------------------------
@dataclass
class IdempotentSet:
    points: IntervalPointSet
    range_values: IntervalPointSet
    idempotent: bool

    def to_json(self) -> dict:
        return {
            "points": self.points.to_json(),
            "range_values": self.range_values.to_json(),
            "idempotent": self.idempotent,
        }


def _stable_values(genop: GeneratedOp, dec) -> IntervalPointSet:
    """Range values v with ``M ∩ [v, F(v, v)] = {v}``."""
    M, F = dec.M, genop.F
    if M.is_finite_set():
        good = []
        for v in M.elements():
            w = f_eval(F, v, v)
            above = M.intersection(normalize([Part(v, False, w, True)])) if w > v else IntervalPointSet.empty()
            if above.is_empty():
                good.append(v)
        return IntervalPointSet.points(good)
    vals = idempotents_of(F, M)
    for g in dec.proper_gaps:
        w = f_eval(F, g.b, g.b)
        if w == g.b or w in g.interior():
            vals = vals.union(IntervalPointSet.points([g.b]))
    if INF in M:
        vals = vals.union(IntervalPointSet.points([INF]))
    return vals


def idempotent_points(genop: GeneratedOp) -> IdempotentSet:
    """Exact set of x in [0, 1] with T(x, x) = x.

    x < 1 qualifies iff x lies in the injectivity set D and t(x) is the only
    range value in [t(x), F(t(x), t(x))]; 1 always qualifies.
    """
    dec = _require(genop)
    D = plateau_data(genop.t).D
    E = _stable_values(genop, dec)
    pts = preimage(genop.t, E).intersection(D).union(IntervalPointSet.points([1]))
    return IdempotentSet(pts, E, pts == UNIT)


# limit property ------------------------------------------------------------------
class OrbitClass(enum.Enum):
    REACHES_ONE = "REACHES_ONE"
    FIXED_BELOW_ONE = "FIXED_BELOW_ONE"
    UNDECIDED = "UNDECIDED"


@dataclass
class DiagonalOrbit:
    x: ExtReal
    powers: list
    classification: OrbitClass
    limit: Optional[ExtReal] = None
    n: Optional[int] = None  # first power at which the classification is certain

    def to_json(self) -> dict:
        return {
            "x": fmt(self.x),
            "powers": [fmt(p) for p in self.powers],
            "classification": self.classification.value,
            "limit": _fmt_opt(self.limit),
            "n": self.n,
        }


def diagonal_powers(genop: GeneratedOp, x, n_max: int = 64) -> DiagonalOrbit:
    """x, T(x, x), T(x, T(x, x)), ... up to the n_max-th power."""
    if n_max < 2:
        raise PreconditionViolated("n_max must be at least 2")
    x = ext(x)
    powers = [x]
    cls, limit, n_hit = OrbitClass.UNDECIDED, None, None
    if x == 1:
        cls, limit, n_hit = OrbitClass.REACHES_ONE, ext(1), 1
    for n in range(2, n_max + 1):
        v = genop.T(x, powers[-1])
        powers.append(v)
        if cls is OrbitClass.UNDECIDED:
            if v == 1:
                cls, limit, n_hit = OrbitClass.REACHES_ONE, v, n
            elif v == powers[-2]:
                # T(x, v) = v: the orbit stays at v forever
                cls, limit, n_hit = OrbitClass.FIXED_BELOW_ONE, v, n
    return DiagonalOrbit(x, powers, cls, limit, n_hit)


@dataclass
class Criterion:
    """A "for all x in (0, 1)" statement with a witness when it fails."""

    name: str
    holds: bool
    witness: Optional[ExtReal] = None

    def to_json(self) -> dict:
        return {"name": self.name, "holds": self.holds, "witness": _fmt_opt(self.witness)}


class LimitVerdict(enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class LimitReport:
    verdict: LimitVerdict
    basis: str
    criteria: dict
    witness: Optional[ExtReal] = None
    orbit: Optional[DiagonalOrbit] = None
    fixed_point: Optional[tuple] = None  # (x, y) with x <= y < 1 and T(x, y) = y
    conflicts: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "basis": self.basis,
            "criteria": {k: c.to_json() for k, c in sorted(self.criteria.items())},
            "witness": _fmt_opt(self.witness),
            "orbit": None if self.orbit is None else self.orbit.to_json(),
            "fixed_point": None if self.fixed_point is None else [fmt(v) for v in self.fixed_point],
            "conflicts": list(self.conflicts),
        }


def _open_pieces(t: PiecewiseMonotone) -> IntervalPointSet:
    """(0, 1) minus the breakpoints: there t(x+) = t(x)."""
    pts = IntervalPointSet.points([b for b in t.breakpoints() if b != INF])
    return OPEN_UNIT.difference(pts)


def _preimage_in(t, v, S) -> ExtReal:
    return _pick(preimage_of_value(t, v).intersection(S))


def _for_all_unit(genop: GeneratedOp, name: str, at_point, on_open, within=OPEN_UNIT) -> Criterion:
    """Check ``at_point(x)`` at interior breakpoints and ``on_open`` on the open pieces.

    ``on_open`` receives the set of values t takes on the open pieces and
    returns a counterexample value or None.  Only x in ``within`` count.
    """
    t = genop.t
    for b in t.breakpoints():
        if 0 < b < 1 and b in within and not at_point(b):
            return Criterion(name, False, b)
    opens = _open_pieces(t).intersection(within)
    v = on_open(image_on(t, opens))
    if v is not None:
        return Criterion(name, False, _preimage_in(t, v, opens))
    return Criterion(name, True)


def _limit_criteria(genop: GeneratedOp) -> dict:
    t, F, tinv = genop.t, genop.F, genop.tinv
    c = t.right_limit(0)

    def strict(S):
        return _exists_value(F, S, lambda v: _cmp_reqs(F, c, v, "<=", v))

    def weak(S):
        return _exists_value(F, S, lambda v: _cmp_reqs(F, c, v, "<", v))

    def diag(S):
        return _exists_value(F, S, lambda v: [Rel(Op(v, v), "<", v)])

    # x whose level set does not reach 1, i.e. t^[-1](t(x)) < 1
    short = OPEN_UNIT.difference(preimage_of_value(t, t(t.domain[1])))
    return {
        "strict_short": _for_all_unit(
            genop, "F(t(0+), t(x)) > t(x+) where t(x) < t(1)",
            lambda x: f_eval(F, c, t(x)) > t.right_limit(x), strict, short,
        ),
        "strict": _for_all_unit(
            genop, "F(t(0+), t(x)) > t(x+)", lambda x: f_eval(F, c, t(x)) > t.right_limit(x), strict
        ),
        "weak": _for_all_unit(
            genop, "F(t(0+), t(x)) >= t(x+)", lambda x: f_eval(F, c, t(x)) >= t.right_limit(x), weak
        ),
        "diagonal": _for_all_unit(
            genop, "F(t(x), t(x)) >= t(x+)", lambda x: f_eval(F, t(x), t(x)) >= t.right_limit(x), diag
        ),
        "plateau": _for_all_unit(
            genop, "t^[-1](t(x)) = t^[-1](t(x+))", lambda x: tinv(t(x)) == tinv(t.right_limit(x)), lambda S: None
        ),
    }


def _flat_start(t) -> bool:
    return not preimage_of_value(t, t.right_limit(0)).intersection(OPEN_UNIT).is_empty()


def limit_fixed_point(genop: GeneratedOp) -> Optional[tuple]:
    """Some (x, y) with 0 < x <= y < 1 and T(x, y) = y, or None.

    Such a pair exists iff the limit property fails (for continuous F): the
    orbit of x then stays below y, and conversely a limit below 1 is reached
    after finitely many steps and is a fixed point of T(x, .).  T(x, y) = y
    holds iff y lies in D and no range value lies in (t(y), F(t(x), t(y))].
    """
    dec = _require(genop, continuous=True)
    t, F = genop.t, genop.F
    D = plateau_data(t).D
    U = image_on(t, OPEN_UNIT)
    V = image_on(t, D.intersection(OPEN_UNIT))
    if U.is_empty() or V.is_empty():
        return None
    u, v = Var(0), Var(1)
    base = [Rel(u, "<=", v)]
    alts = [[Rel(Op(u, v), "<=", v)]]
    for g in dec.proper_gaps:
        alts.append([In(v, IntervalPointSet.points([g.b])), In(Op(u, v), g.interior())])
    for extra in alts:
        got = _sample(F, [U, V], base + extra)
        if got is None:
            continue
        a, b = got
        y = genop.tinv(b)
        x = y if a == b else genop.tinv(a)
        return x, y
    return None


def limit_property_check(genop: GeneratedOp, n_max: int = 64, grid=None) -> LimitReport:
    """Decide whether x_T^(n) -> 1 for every x in (0, 1).

    Known criteria are applied as a ladder (necessary diagonal
    condition, necessary weak criterion, sufficient strict criterion,
    equivalence under the plateau hypothesis); the exact fixed-point search
    settles the remaining cases and double-checks the ladder.  Orbits at grid
    points are computed as a further cross-check.
    """
    _require(genop, continuous=True)
    crit = _limit_criteria(genop)
    fp = limit_fixed_point(genop)
    exact = LimitVerdict.FAILS if fp is not None else LimitVerdict.HOLDS

    if not crit["diagonal"].holds:
        ladder, basis = LimitVerdict.FAILS, "diagonal condition F(t(x),t(x)) >= t(x+) fails"
    elif not crit["weak"].holds:
        ladder, basis = LimitVerdict.FAILS, "weak criterion (necessary for continuous F) fails"
    elif crit["strict"].holds:
        ladder, basis = LimitVerdict.HOLDS, "strict criterion (sufficient for continuous F) holds"
    elif crit["plateau"].holds and not crit["strict_short"].holds and _flat_start(genop.t):
        # the converse needs t^[-1](t(y)) < 1 at the failure, and (the weak
        # criterion holding) an x > 0 with t(x) = t(0+)
        ladder, basis = LimitVerdict.FAILS, "strict criterion fails under the plateau hypothesis"
    else:
        ladder, basis = None, "exact fixed-point search"

    conflicts = []
    verdict = exact
    if ladder is not None and ladder is not exact:
        conflicts.append(f"criterion ladder says {ladder.value}, fixed-point search says {exact.value}")
        verdict = LimitVerdict.INCONCLUSIVE

    orbit = None
    witness = None
    if fp is not None:
        witness = fp[0]
        orbit = diagonal_powers(genop, witness, n_max)
        if orbit.classification is OrbitClass.REACHES_ONE:
            conflicts.append(f"orbit of {fmt(witness)} reaches 1")
            verdict = LimitVerdict.INCONCLUSIVE
    grid = default_grid(genop) if grid is None else grid
    for x in grid:
        if not 0 < x < 1:
            continue
        o = diagonal_powers(genop, x, n_max)
        if o.classification is OrbitClass.FIXED_BELOW_ONE and exact is LimitVerdict.HOLDS:
            conflicts.append(f"orbit of {fmt(x)} is fixed at {fmt(o.limit)}")
            verdict = LimitVerdict.INCONCLUSIVE
            break
    return LimitReport(verdict, basis, crit, witness, orbit, fp, conflicts)


# cancellation ------------------------------------------------------------------------
@dataclass
class CancellationSets:
    C: IntervalPointSet
    beta: Optional[ExtReal]
    alpha: Optional[ExtReal]
    H_kappa: IntervalPointSet
    H_k: dict

    def to_json(self) -> dict:
        return {
            "C": self.C.to_json(),
            "beta": _fmt_opt(self.beta),
            "alpha": _fmt_opt(self.alpha),
            "H_kappa": self.H_kappa.to_json(),
            "H_k": {k: v.to_json() for k, v in sorted(self.H_k.items())},
        }


@dataclass
class CancellationReport:
    conditionally_cancellative: bool
    cancellative: bool
    degenerate: bool
    sets: CancellationSets
    bad_i: IntervalPointSet  # F(M \ C, M) outside M ∪ [t(1), inf]
    bad_ii: IntervalPointSet  # F(H, M) below t(1)
    witness: Optional[tuple] = None  # (x1, x2, y) with T(x1, y) = T(x2, y) < 1
    grid_witness: Optional[tuple] = None
    consistent: bool = True

    def to_json(self) -> dict:
        return {
            "conditionally_cancellative": self.conditionally_cancellative,
            "cancellative": self.cancellative,
            "degenerate": self.degenerate,
            "sets": self.sets.to_json(),
            "bad_i": self.bad_i.to_json(),
            "bad_ii": self.bad_ii.to_json(),
            "witness": None if self.witness is None else [fmt(v) for v in self.witness],
            "grid_witness": None if self.grid_witness is None else [fmt(v) for v in self.grid_witness],
            "consistent": self.consistent,
        }


def h_sets(genop: GeneratedOp) -> tuple:
    """``(H_kappa, {label: H_k})``: hulls of F(M, M) inside each gap, representative removed.

    The representative (t(0) for kappa, b_k for a gap) is dropped: F(t(0), M)
    alone would otherwise meet M \\ {t(0)} whenever t(0) is neutral.
    """
    dec = genop.dec
    M, F, t0 = dec.M, genop.F, dec.t0
    FMM = f_image(F, M, M)
    below = FMM.intersection(normalize([Part(Fraction(0), True, t0, False)])) if t0 > 0 else IntervalPointSet.empty()
    H_kappa = o_hull(below.union(IntervalPointSet.points([t0]))).difference(IntervalPointSet.points([t0]))
    H_k = {}
    for i, g in enumerate(dec.proper_gaps):
        inner = FMM.intersection(normalize([Part(g.b, False, g.d, False)]))
        hull = o_hull(inner.union(IntervalPointSet.points([g.b])))
        H_k[str(i)] = hull.difference(IntervalPointSet.points([g.b]))
    return H_kappa, H_k


def _cancellation_sets(genop: GeneratedOp, C) -> CancellationSets:
    pd = plateau_data(genop.t)
    beta = pd.H.min() if not pd.H.is_empty() else None
    alpha = preimage_of_value(genop.t, beta).inf() if beta is not None else None
    hk, hs = h_sets(genop)
    return CancellationSets(C, beta, alpha, hk, hs)


def _plateau_pair(t, h) -> tuple:
    pre = preimage_of_value(t, h)
    hi = pre.sup()
    lo = pre.inf() if pre.parts[0].lo_closed else (pre.inf() + hi) / 2
    return lo, hi


def _cancel_witness(genop: GeneratedOp, H, bad_i, bad_ii) -> Optional[tuple]:
    t, F, dec = genop.t, genop.F, genop.dec
    M = dec.M
    t1 = t(t.domain[1])
    below_t1 = normalize([Part(Fraction(0), True, t1, False)])
    found = None
    if not bad_ii.is_empty():
        got = _sample(F, [H, M], [In(Op(Var(0), Var(1)), below_t1)])
        if got is not None:
            h, b = got
            x1, x2 = _plateau_pair(t, h)
            found = (x1, x2, genop.tinv(b))
    if found is None and not bad_i.is_empty():
        a1, a2, b = Var(0), Var(1), Var(2)
        for g in dec.proper_gaps:
            if g.b >= t1:
                continue
            low = g.interior().union(IntervalPointSet.points([g.b]))
            got = _sample(F, [M, M, M], [Rel(a1, "<", a2), In(Op(a1, b), low), In(Op(a2, b), g.interior())])
            if got is not None:
                found = tuple(genop.tinv(v) for v in got)
                break
    if found is not None:
        x1, x2, y = found
        v1, v2 = genop.T(x1, y), genop.T(x2, y)
        if x1 != x2 and v1 == v2 and v1 < 1:
            return found
    return None


def cancellation_grid_search(genop: GeneratedOp, grid=None) -> Optional[tuple]:
    """First (x1, x2, y) on the grid with x1 < x2 and T(x1, y) = T(x2, y) < 1."""
    grid = sorted(set(ext(g) for g in (grid if grid is not None else default_grid(genop))))
    for y in grid:
        seen = {}
        for x in grid:
            v = genop.T(x, y)
            if v < 1:
                if v in seen:
                    return seen[v], x, y
                seen[v] = x
    return None


def cancellation_check(genop: GeneratedOp, C: Optional[IntervalPointSet] = None, grid=None) -> CancellationReport:
    """Conditional cancellation and cancellation for strictly increasing F.

    C defaults to the plateau values H.
    """
    dec = _require(genop)
    F, t = genop.F, genop.t
    if not F.strictly_monotone:
        raise PreconditionViolated("cancellation analysis needs a strictly increasing F")
    H = plateau_data(t).H
    C = H if C is None else C
    sets = _cancellation_sets(genop, C)
    M = dec.M
    t1 = t(t.domain[1])
    above = normalize([Part(t1, True, INF, True)])
    gw = cancellation_grid_search(genop, grid)
    if dec.t0 in H:
        # a plateau at the bottom: cancellation can only hold when T is constant 1
        ok = genop.T(0, 0) == 1
        witness = None if ok else (lambda p: (p[0], p[1], ext(0)))(_plateau_pair(t, dec.t0))
        return CancellationReport(
            ok, False, True, sets, IntervalPointSet.empty(), IntervalPointSet.empty(),
            witness, gw, not (ok and gw is not None),
        )
    bad_i = f_image(F, M.difference(C), M).difference(M.union(above))
    bad_ii = f_image(F, H, M).difference(above)
    cond = bad_i.is_empty() and bad_ii.is_empty()
    canc = H.is_empty() and f_image(F, M.difference(C), M).issubset(M)
    witness = None if cond else _cancel_witness(genop, H, bad_i, bad_ii)
    consistent = not (cond and gw is not None) and (cond or witness is not None)
    return CancellationReport(cond, canc, False, sets, bad_i, bad_ii, witness, gw, consistent)


# t-supconorm -------------------------------------------------------------------------
@dataclass
class AxiomViolation:
    axiom: str
    args: tuple
    values: tuple

    def to_json(self) -> dict:
        return {"axiom": self.axiom, "args": [fmt(a) for a in self.args], "values": [fmt(v) for v in self.values]}


def supconorm_axioms(genop: GeneratedOp, grid=None) -> Optional[AxiomViolation]:
    """First grid violation of commutativity, monotonicity, T >= max or associativity."""
    T = genop.T
    grid = sorted(set(ext(g) for g in (grid if grid is not None else default_grid(genop))))
    for x, y in itertools.product(grid, repeat=2):
        v = T(x, y)
        if v != T(y, x):
            return AxiomViolation("commutativity", (x, y), (v, T(y, x)))
        if v < max(x, y):
            return AxiomViolation("upper bound", (x, y), (v,))
    for i, x in enumerate(grid):
        for y, y2 in zip(grid, grid[1:]):
            if T(x, y) > T(x, y2):
                return AxiomViolation("monotonicity", (x, y, y2), (T(x, y), T(x, y2)))
    for x, y, z in itertools.product(grid, repeat=3):
        lhs, rhs = T(T(x, y), z), T(x, T(y, z))
        if lhs != rhs:
            return AxiomViolation("associativity", (x, y, z), (lhs, rhs))
    return None


@dataclass
class SupconormReport:
    is_supconorm: bool
    hits: IntervalPointSet
    H: IntervalPointSet
    associativity: Verdict
    grid_violation: Optional[AxiomViolation] = None
    consistent: bool = True

    def to_json(self) -> dict:
        return {
            "is_supconorm": self.is_supconorm,
            "hits": self.hits.to_json(),
            "H": self.H.to_json(),
            "associativity": self.associativity.value,
            "grid_violation": None if self.grid_violation is None else self.grid_violation.to_json(),
            "consistent": self.consistent,
        }


def supconorm_equivalence_check(genop: GeneratedOp, grid=None) -> SupconormReport:
    """For conditionally cancellative T with strict F and t(0) neutral:
    T is a t-supconorm iff F(H, M) misses M \\ {t(0)}.

    The second argument runs over finite range values only (F(h, inf) = inf
    for every h).  Cross-checked against the exact associativity decision
    and the axioms on a grid.
    """
    dec = _require(genop)
    F = genop.F
    if not F.strictly_monotone:
        raise PreconditionViolated("needs a strictly increasing F")
    if dec.t0 != F.neutral:
        raise PreconditionViolated(f"t(0) = {fmt(dec.t0)} is not the neutral element of F")
    rep = cancellation_check(genop, grid=grid)
    if not rep.conditionally_cancellative:
        raise PreconditionViolated("T is not conditionally cancellative")
    M = dec.M
    hk, hs = h_sets(genop)
    H = hk
    for s in hs.values():
        H = H.union(s)
    fin = M.difference(IntervalPointSet.points([INF]))
    hits = f_image(F, H, fin).intersection(M.difference(IntervalPointSet.points([dec.t0])))
    verdict = hits.is_empty()
    assoc = f_condition_check(genop, with_cells=False).verdict
    gv = supconorm_axioms(genop, grid)
    consistent = (assoc is Verdict.ASSOCIATIVE) == verdict and not (verdict and gv is not None)
    return SupconormReport(verdict, hits, H, assoc, gv, consistent)


# continuity ---------------------------------------------------------------------------
@dataclass
class PointContinuity:
    x: ExtReal
    y: ExtReal
    value: ExtReal
    left: ExtReal
    right: ExtReal
    criterion: Optional[bool] = None  # range criterion for strictly increasing t

    @property
    def left_ok(self) -> bool:
        return self.left == self.value

    @property
    def right_ok(self) -> bool:
        return self.right == self.value

    def to_json(self) -> dict:
        return {
            "x": fmt(self.x),
            "y": fmt(self.y),
            "value": fmt(self.value),
            "left": fmt(self.left),
            "right": fmt(self.right),
            "left_continuous": self.left_ok,
            "right_continuous": self.right_ok,
            "criterion": self.criterion,
        }


@dataclass
class ContinuityReport:
    points: list
    left_continuous: bool
    right_continuous: bool
    left_witness: Optional[tuple]
    right_witness: Optional[tuple]
    t_continuous: bool
    t_strictly_increasing: bool
    constant_one: bool
    neutral_zero: bool
    associative: Verdict
    continuous_tconorm: bool
    tconorm_criteria: dict

    @property
    def continuous(self) -> bool:
        return self.left_continuous and self.right_continuous

    def failures(self, side: str = "right") -> list:
        attr = "right_ok" if side == "right" else "left_ok"
        return [(p.x, p.y) for p in self.points if not getattr(p, attr)]

    def to_json(self) -> dict:
        return {
            "points": [p.to_json() for p in self.points],
            "continuous": self.continuous,
            "left_continuous": self.left_continuous,
            "right_continuous": self.right_continuous,
            "left_witness": None if self.left_witness is None else [fmt(v) for v in self.left_witness],
            "right_witness": None if self.right_witness is None else [fmt(v) for v in self.right_witness],
            "t_continuous": self.t_continuous,
            "t_strictly_increasing": self.t_strictly_increasing,
            "constant_one": self.constant_one,
            "neutral_zero": self.neutral_zero,
            "associative": self.associative.value,
            "continuous_tconorm": self.continuous_tconorm,
            "tconorm_criteria": {k: v for k, v in sorted(self.tconorm_criteria.items())},
        }


def _prev_break(t, x):
    return max(b for b in t.breakpoints() if b < x)


def left_limit_T(genop: GeneratedOp, x0, y0) -> ExtReal:
    """lim T(x, y) as (x, y) increases to (x0, y0); a coordinate at 0 stays fixed."""
    t, F, tinv = genop.t, genop.F, genop.tinv
    x0, y0 = ext(x0), ext(y0)
    lo = t.domain[0]
    if x0 == lo and y0 == lo:
        return genop.T(x0, y0)
    w = f_eval(F, t(x0), t(y0))
    # the approach values are monotone; inside the last pieces before x0 and y0
    # they either equal w throughout or stay strictly below it
    gaps = [c - _prev_break(t, c) for c in (x0, y0) if c > lo]
    eps = min(gaps) / 2
    xs = x0 - eps if x0 > lo else x0
    ys = y0 - eps if y0 > lo else y0
    if f_eval(F, t(xs), t(ys)) == w:
        return tinv(w)
    return tinv.left_limit(w)


def right_limit_T(genop: GeneratedOp, x0, y0) -> ExtReal:
    """lim T(x, y) as (x, y) decreases to (x0, y0); a coordinate at 1 stays fixed."""
    t = genop.t
    x0, y0 = ext(x0), ext(y0)
    return genop.tinv(f_eval(genop.F, _right_value(t, x0), _right_value(t, y0)))


def _range_criterion(genop: GeneratedOp, x, y) -> bool:
    """|M ∩ [F(t(x), t(y)), F(t(x+), t(y+))]| <= 1."""
    t, F = genop.t, genop.F
    a = f_eval(F, t(x), t(y))
    b = f_eval(F, _right_value(t, x), _right_value(t, y))
    S = genop.M.intersection(normalize([Part(a, True, b, True)]))
    return S.is_finite_set() and len(S.elements()) <= 1


def point_continuity(genop: GeneratedOp, x, y, strict_t: bool) -> PointContinuity:
    x, y = ext(x), ext(y)
    crit = _range_criterion(genop, x, y) if strict_t else None
    return PointContinuity(x, y, genop.T(x, y), left_limit_T(genop, x, y), right_limit_T(genop, x, y), crit)


def _right_witness(genop: GeneratedOp, dec) -> Optional[tuple]:
    """Some (x0, y0) where T is not right continuous."""
    t, F = genop.t, genop.F
    J = jump_points(t)
    Mp = dec.M.difference(IntervalPointSet.points([dec.t0]))
    cont = UNIT.difference(IntervalPointSet.points(J + [t.domain[1]]))
    Bc = image_on(t, cont)
    for j in J:
        a, ap = t(j), t.right_limit(j)
        for y in J + [t.domain[1]]:
            if right_limit_T(genop, j, y) != genop.T(j, y):
                return j, y
        if a == INF or Bc.is_empty():
            continue
        b, s = Var(0), Var(1)
        reqs = [Rel(Op(Const(a), b), "<", s)]
        if ap != INF:
            reqs.append(Rel(s, "<=", Op(Const(ap), b)))
        got = _sample(F, [Bc, Mp], reqs)
        if got is not None:
            return j, _preimage_in(t, got[0], cont)
    return None


def _left_points(t: PiecewiseMonotone) -> IntervalPointSet:
    """Points with a strictly increasing piece of t just to their left."""
    parts = [Part(s.lo, False, s.hi, s.hi_closed) for s in t.segments if s.trend() > 0]
    return normalize(parts)


def _left_witness(genop: GeneratedOp, dec) -> Optional[tuple]:
    """Some (x0, y0) where T is not left continuous.

    t is left continuous, so only the jumps of t^[-1] matter: the plateau
    values h, reached by F(t(x), t(y)) strictly from below.
    """
    t, F = genop.t, genop.F
    H = plateau_data(t).H
    if H.is_empty():
        return None
    L = _left_points(t)
    noinf = IntervalPointSet.points([INF])
    tL = image_on(t, L).difference(noinf)
    M = dec.M.difference(noinf)
    for h in H.elements():
        if F.kind is Kind.MAX:
            if h in tL:
                x0 = _preimage_in(t, h, L)
                return x0, x0
            continue
        got = _sample(F, [tL, M], [In(Op(Var(0), Var(1)), IntervalPointSet.points([h]))])
        if got is not None:
            a, b = got
            return _preimage_in(t, a, L), genop.tinv(b)
    return None


def _neutral_zero(genop: GeneratedOp, dec) -> bool:
    """T(x, 0) = x for every x."""
    t, F = genop.t, genop.F
    if not plateau_data(t).H.is_empty():
        return False
    t0 = dec.t0
    if t0 == F.neutral:
        return True
    A = image_on(t, UNIT.difference(IntervalPointSet.points([t.domain[1]])))
    Mp = dec.M.difference(IntervalPointSet.points([t0]))
    a, s = Var(0), Var(1)
    if t0 == INF:
        return False
    return _sample(F, [A, Mp], [Rel(a, "<", s), Rel(s, "<=", Op(a, Const(t0)))]) is None


def _t_continuous(t: PiecewiseMonotone, lo_open: bool = False) -> bool:
    for b in t.breakpoints():
        if b == INF:
            continue
        if b > t.domain[0] and t.left_limit(b) != t(b):
            return False
        if b < t.domain[1] and t.right_limit(b) != t(b) and not (lo_open and b == t.domain[0]):
            return False
    return True


def continuity_check(genop: GeneratedOp, grid=None) -> ContinuityReport:
    """Exact left/right continuity of T on all of [0, 1]^2 plus a per-point table.

    The table covers all pairs of breakpoints (or the given grid).  Global
    verdicts come from exact searches for discontinuity witnesses.
    """
    dec = _require(genop, continuous=True)
    t, F = genop.t, genop.F
    H = plateau_data(t).H
    strict_t = H.is_empty()
    if grid is None:
        grid = sorted({b for b in t.breakpoints() if b != INF} | {ext(0), ext(1)})
    pts = [point_continuity(genop, x, y, strict_t) for x, y in itertools.product(grid, repeat=2)]
    rw = _right_witness(genop, dec)
    lw = _left_witness(genop, dec)
    t_cont = _t_continuous(t)
    assoc = f_condition_check(genop, with_cells=False).verdict
    neutral = _neutral_zero(genop, dec)
    continuous = rw is None and lw is None
    tconorm = continuous and neutral and assoc is Verdict.ASSOCIATIVE

    c0 = t.right_limit(0)
    criteria = {}
    if F.strictly_monotone:
        criteria["strict F: t continuous, strictly increasing, F(t(0),t(0)) = t(0)"] = bool(
            t_cont and strict_t and f_eval(F, dec.t0, dec.t0) == dec.t0
        )
    no_flat_start = c0 != INF and preimage_of_value(t, c0).intersection(OPEN_UNIT).is_empty()
    if F.strictly_monotone and no_flat_start and image_on(t, OPEN_UNIT).sup() != INF:
        criteria["t continuous, strictly increasing on (0,1], F(t(0+),t(0+)) = t(0+)"] = bool(
            _t_continuous(t, lo_open=True) and strict_t and f_eval(F, c0, c0) == c0
        )
    return ContinuityReport(
        pts,
        lw is None,
        rw is None,
        lw,
        rw,
        t_cont,
        strict_t,
        genop.T(0, 0) == 1,
        neutral,
        assoc,
        tconorm,
        criteria,
    )
