"""Bundled example corpus: fixture loading and expectation checks.

A fixture is a JSON file holding a generator, a semigroup, a mode and a
list of expectations.  Each expectation names a check below; running a
fixture yields one pass/fail result per expectation.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .associativity import (
    GeneratedOp,
    Mode,
    Verdict,
    brute_force_assoc,
    build_generated_op,
    f_condition_check,
    frak_t,
)
from .decomposition import decompose, g_m, star_system
from .generators import PiecewiseMonotone, range_of, sample_points
from .inverses import inverse_identities_report, pseudo_inverse, weak_inverse_at, weak_pseudo_inverse
from .numerics import INF, IntervalPointSet, ext, fmt, normalize
from .properties import (
    cancellation_check,
    continuity_check,
    diagonal_powers,
    idempotent_points,
    limit_property_check,
)
from .semigroups import PreconditionViolated, SemigroupDescriptor, f_eval, parse_semigroup

ENV_VAR = "GENALG_FIXTURES_DIR"


def fixtures_dir() -> Path:
    override = os.environ.get(ENV_VAR)
    if override:
        return Path(override)
    return Path(__file__).with_name("fixtures")


@dataclass
class Fixture:
    id: str
    description: str
    generator: PiecewiseMonotone
    semigroup: SemigroupDescriptor
    mode: Optional[str]
    expectations: list
    path: Optional[Path] = None
    _op: Optional[GeneratedOp] = field(default=None, repr=False)

    @property
    def op(self) -> GeneratedOp:
        if self._op is None:
            self._op = build_generated_op(self.generator, self.semigroup, self.mode)
        return self._op


def parse_fixture(data: dict, path: Optional[Path] = None) -> Fixture:
    base = path.parent if path is not None else Path(".")
    sg = data.get("semigroup", "sum")
    if sg.lower().startswith("table:") and not os.path.isabs(sg[6:]):
        sg = "table:" + str(base / sg[6:])
    return Fixture(
        id=data["id"],
        description=data.get("description", ""),
        generator=PiecewiseMonotone.from_json(data["generator"]),
        semigroup=parse_semigroup(sg),
        mode=data.get("mode"),
        expectations=list(data.get("expect", [])),
        path=path,
    )


def load_fixture(path) -> Fixture:
    path = Path(path)
    with open(path) as fh:
        return parse_fixture(json.load(fh), path)


def load_corpus(directory=None) -> list:
    directory = Path(directory) if directory is not None else fixtures_dir()
    fixtures = [load_fixture(p) for p in sorted(directory.glob("*.json"))]
    return sorted(fixtures, key=lambda f: f.id)


# exact helpers ---------------------------------------------------------------------
def direct_T(fx: Fixture, x, y):
    """T(x, y) from the pointwise definition of the weak pseudo-inverse."""
    t = fx.generator
    return weak_inverse_at(t, f_eval(fx.semigroup, t(ext(x)), t(ext(y))))


def _set(raw) -> IntervalPointSet:
    return normalize(raw)


def _reference(pieces, domain=(0, "inf")) -> PiecewiseMonotone:
    return PiecewiseMonotone.from_json({"segments": pieces, "domain": list(domain)})


def _probe_points(cuts, extra=()) -> list:
    """Cut points, midpoints between them, a point past the last finite cut, and inf."""
    fin = sorted({c for c in cuts if c != INF} | {ext(e) for e in extra if ext(e) != INF})
    pts = set(fin)
    pts |= {(a + b) / 2 for a, b in zip(fin, fin[1:])}
    if fin:
        pts.add(fin[-1] + 1)
    pts.add(INF)
    return sorted(pts)


def _spread(lo, hi, count: int, cuts=()) -> list:
    lo, hi = ext(lo), ext(hi)
    pts = {lo + (hi - lo) * Fraction(i, count - 1) for i in range(count)}
    pts |= {ext(c) for c in cuts if lo <= ext(c) <= hi}
    return sorted(pts)


def _triple(w) -> list:
    return [fmt(w.x), fmt(w.y), fmt(w.z)]


# checks ----------------------------------------------------------------------------
# each check takes (fixture, expectation) and returns (passed, detail)
CHECKS: dict = {}


def check(name: str):
    def register(fn: Callable):
        CHECKS[name] = fn
        return fn
    return register


def _compare_table(built: PiecewiseMonotone, ref: PiecewiseMonotone):
    pts = _probe_points(built.breakpoints() + ref.breakpoints())
    bad = [(p, built(p), ref(p)) for p in pts if built(p) != ref(p)]
    if bad:
        p, a, b = bad[0]
        return False, f"differs at {fmt(p)}: built {fmt(a)}, expected {fmt(b)} ({len(bad)} points)"
    return True, f"equal at {len(pts)} probe points"


@check("weak_inverse_table")
def _weak_table(fx: Fixture, e: dict):
    return _compare_table(weak_pseudo_inverse(fx.generator), _reference(e["pieces"]))


@check("pseudo_inverse_table")
def _pseudo_table(fx: Fixture, e: dict):
    return _compare_table(pseudo_inverse(fx.generator), _reference(e["pieces"]))


def _values(fn, pairs):
    bad = [(y, fn(ext(y)), ext(v)) for y, v in pairs if fn(ext(y)) != ext(v)]
    if bad:
        y, got, want = bad[0]
        return False, f"at {fmt(y)}: got {fmt(got)}, expected {fmt(want)}"
    return True, f"{len(pairs)} values match"


@check("weak_inverse_values")
def _weak_values(fx: Fixture, e: dict):
    return _values(weak_pseudo_inverse(fx.generator), e["values"])


@check("pseudo_inverse_values")
def _pseudo_values(fx: Fixture, e: dict):
    return _values(pseudo_inverse(fx.generator), e["values"])


# identities that hold for every monotone t; the remaining report entries
# ("t_tinv_t_eq_t", "tinv_eq_pinv") are properties of the particular t
IDENTITY_CHECKS = [
    "tinv_t_ge_id",
    "t_tinv_t_ge_t",
    "plateau_iff_identity",
    "coincide_iff_strict",
    "pinv_le_tinv",
    "closed_form_matches_definition",
]


@check("inverse_identities")
def _identities(fx: Fixture, e: dict):
    rep = inverse_identities_report(fx.generator)
    want = e.get("checks") or IDENTITY_CHECKS
    failed = [k for k in want if not rep[k].holds]
    if failed:
        return False, "failed: " + ", ".join(failed)
    return True, f"{len(want)} identities hold on {rep.grid_size} points"


@check("decomposition")
def _decomposition(fx: Fixture, e: dict):
    dec = decompose(fx.generator)
    U = [[fmt(b), fmt(d)] for b, d in dec.U]
    V = [fmt(c) for c in dec.V]
    wantU = [[fmt(ext(b)), fmt(ext(d))] for b, d in e["U"]]
    wantV = [fmt(ext(c)) for c in e["V"]]
    rebuilt = dec.reconstruct() == range_of(fx.generator)
    ok = U == wantU and V == wantV and rebuilt
    return ok, f"U = {U}, V = {V}, reconstruction {'matches' if rebuilt else 'differs'}"


@check("range")
def _range(fx: Fixture, e: dict):
    M = range_of(fx.generator)
    want = _set(e["set"])
    return M == want, f"range {M}"


@check("projection_closed_form")
def _projection(fx: Fixture, e: dict):
    """G_M against a closed form: listed constant pieces, identity elsewhere."""
    dec = decompose(fx.generator)
    pieces = [(normalize([p[:4]]), ext(p[4])) for p in e["pieces"]]
    cuts = [c for p in e["pieces"] for c in (p[0], p[2])]
    lo, hi = e["probe"]
    probes = _spread(lo, hi, int(e.get("count", 20)), cuts)

    def closed(x):
        for S, v in pieces:
            if x in S:
                return v
        return x

    bad = [x for x in probes if g_m(dec, x) != closed(x)]
    if bad:
        x = bad[0]
        return False, f"at {fmt(x)}: projection {fmt(g_m(dec, x))}, closed form {fmt(closed(x))}"
    return True, f"{len(probes)} probes match"


@check("assoc_verdict")
def _assoc(fx: Fixture, e: dict):
    rep = f_condition_check(fx.op, with_cells=False)
    if rep.verdict.value != e["verdict"]:
        return False, f"verdict {rep.verdict.value}"
    detail = f"verdict {rep.verdict.value}"
    if rep.verdict is Verdict.NOT_ASSOCIATIVE:
        w = rep.witness
        a = direct_T(fx, w.x, w.y)
        lhs = direct_T(fx, a, w.z)
        b = direct_T(fx, w.y, w.z)
        rhs = direct_T(fx, w.x, b)
        if lhs == rhs:
            return False, f"witness {_triple(w)} does not re-verify"
        detail += f"; witness {_triple(w)} gives {fmt(lhs)} != {fmt(rhs)}"
    elif rep.verdict is Verdict.ASSOCIATIVE:
        w = brute_force_assoc(fx.op)
        if w is not None:
            return False, f"grid search contradicts: {_triple(w)}"
        detail += "; no grid violation"
    return True, detail


@check("hull_sets")
def _hull(fx: Fixture, e: dict):
    ft = frak_t(fx.op.dec, fx.semigroup)
    got = {"T1": ft.T1, "T2": ft.T2, "T3": ft.T3, "T": ft.T}
    bad = [k for k, raw in sorted(e["sets"].items()) if got[k] != _set(raw)]
    detail = ", ".join(f"{k} = {got[k]}" for k in ("T1", "T2", "T3"))
    if bad:
        want = ", ".join(f"{k} expected {_set(e['sets'][k])}" for k in bad)
        return False, f"{detail}; {want}"
    return True, detail


@check("operation_values")
def _op_values(fx: Fixture, e: dict):
    T = fx.op.T
    bad = [(x, y, v) for x, y, v in e["values"] if T(ext(x), ext(y)) != ext(v)]
    if bad:
        x, y, v = bad[0]
        return False, f"T({x}, {y}) = {fmt(T(ext(x), ext(y)))}, expected {v}"
    return True, f"{len(e['values'])} values match"


@check("operation_constant")
def _op_const(fx: Fixture, e: dict):
    n = int(e.get("grid_n", 21))
    grid = [Fraction(i, n - 1) for i in range(n)] + sample_points(fx.generator)
    grid = sorted(set(grid))
    want = ext(e["value"])
    bad = next(((x, y) for x, y in itertools.product(grid, repeat=2) if fx.op.T(x, y) != want), None)
    if bad:
        return False, f"T({fmt(bad[0])}, {fmt(bad[1])}) = {fmt(fx.op.T(*bad))}"
    return True, f"T = {fmt(want)} on {len(grid)}x{len(grid)} points"


@check("idempotents")
def _idem(fx: Fixture, e: dict):
    got = idempotent_points(fx.op).points
    want = _set(e["set"])
    # direct scan on the sample grid as an independent check
    xs = sample_points(fx.generator, per_piece=8)
    scan = [x for x in xs if direct_T(fx, x, x) == x]
    agree = all((x in got) == (x in scan) for x in xs)
    return got == want and agree, f"idempotents {got}; direct scan {'agrees' if agree else 'disagrees'}"


@check("limit")
def _limit(fx: Fixture, e: dict):
    rep = limit_property_check(fx.op)
    ok = rep.verdict.value == e["verdict"]
    detail = f"verdict {rep.verdict.value} ({rep.basis})"
    if "fixed_point" in e:
        x = ext(e["fixed_point"])
        orbit = diagonal_powers(fx.op, x)
        ok = ok and orbit.limit == x and orbit.classification.value == "FIXED_BELOW_ONE"
        if "n" in e:
            ok = ok and orbit.n == int(e["n"])
        detail += f"; orbit of {fmt(x)}: {orbit.classification.value} at {_fmt(orbit.limit)}, n = {orbit.n}"
    return ok, detail


def _fmt(v):
    return "none" if v is None else fmt(v)


@check("cancellation")
def _cancel(fx: Fixture, e: dict):
    rep = cancellation_check(fx.op)
    ok = rep.conditionally_cancellative == e["conditionally_cancellative"]
    if "cancellative" in e:
        ok = ok and rep.cancellative == e["cancellative"]
    detail = f"conditionally cancellative: {rep.conditionally_cancellative}"
    if "pair" in e:
        x1, x2, y = (ext(v) for v in e["pair"])
        a, b = direct_T(fx, x1, y), direct_T(fx, x2, y)
        ok = ok and a == b < 1
        detail += f"; listed pair gives {fmt(a)} and {fmt(b)}"
    if not rep.conditionally_cancellative:
        if rep.witness is None:
            return False, detail + "; no witness"
        x1, x2, y = rep.witness
        a, b = direct_T(fx, x1, y), direct_T(fx, x2, y)
        good = x1 != x2 and a == b and a < 1
        ok = ok and good
        detail += f"; T({fmt(x1)}, {fmt(y)}) = T({fmt(x2)}, {fmt(y)}) = {fmt(a)}"
    return ok, detail


@check("continuity")
def _continuity(fx: Fixture, e: dict):
    rep = continuity_check(fx.op)
    ok = True
    parts = []
    for key in ("continuous", "continuous_tconorm", "t_continuous", "constant_one"):
        if key in e:
            got = getattr(rep, key)
            ok = ok and got == e[key]
            parts.append(f"{key} {got}")
    if "right_failure_at" in e:
        fails = rep.failures("right")
        for x, y in e["right_failure_at"]:
            hit = (ext(x), ext(y)) in fails
            ok = ok and hit
            p = next(p for p in rep.points if (p.x, p.y) == (ext(x), ext(y))) if hit else None
            if p is not None:
                parts.append(f"right limit at ({x}, {y}) is {fmt(p.right)}, value {fmt(p.value)}")
            else:
                parts.append(f"({x}, {y}) is right-continuous")
    return ok, "; ".join(parts)


@check("brute_force_witness")
def _brute(fx: Fixture, e: dict):
    x, y, z = (ext(v) for v in e["triple"])
    grid = sorted({x, y, z} | set(ext(g) for g in e.get("grid", [])))
    found = brute_force_assoc(fx.op, grid=grid, all_witnesses=True)
    lhs, rhs = ext(e["lhs"]), ext(e["rhs"])
    hit = any((w.x, w.y, w.z, w.lhs, w.rhs) == (x, y, z, lhs, rhs) for w in found)
    # the two sides again, straight from the definition
    a = direct_T(fx, direct_T(fx, x, y), z)
    b = direct_T(fx, x, direct_T(fx, y, z))
    ok = hit and (a, b) == (lhs, rhs)
    return ok, f"sides {fmt(a)} and {fmt(b)}; {len(found)} witnesses on the grid"


def _unit_grid(n: int) -> list:
    return [Fraction(i, n - 1) for i in range(n)]


@check("tnorm_axioms")
def _tnorm(fx: Fixture, e: dict):
    n = int(e.get("grid_n", 50))
    g = _unit_grid(n)
    T = fx.op.T
    for x, y in itertools.product(g, repeat=2):
        if T(x, y) != T(y, x):
            return False, f"commutativity fails at ({fmt(x)}, {fmt(y)})"
    for x in g:
        if T(x, 1) != x:
            return False, f"1 is not neutral at {fmt(x)}"
        row = [T(x, y) for y in g]
        if any(a > b for a, b in zip(row, row[1:])):
            return False, f"monotonicity fails in row {fmt(x)}"
    for x, y, z in itertools.product(g, repeat=3):
        if T(T(x, y), z) != T(x, T(y, z)):
            return False, f"associativity fails at ({fmt(x)}, {fmt(y)}, {fmt(z)})"
    return True, f"commutativity, associativity, monotonicity and neutral 1 on a {n}x{n} grid"


@check("lukasiewicz")
def _luk(fx: Fixture, e: dict):
    n = int(e.get("grid_n", 50))
    g = _unit_grid(n)
    bad = next(((x, y) for x, y in itertools.product(g, repeat=2) if fx.op.T(x, y) != max(Fraction(0), x + y - 1)), None)
    if bad:
        return False, f"T({fmt(bad[0])}, {fmt(bad[1])}) = {fmt(fx.op.T(*bad))}"
    return True, f"T = max(0, x + y - 1) on a {n}x{n} grid"


@check("round_trips")
def _round_trips(fx: Fixture, e: dict):
    """Both compositions through t* agree on sample points of M and D."""
    st = star_system(fx.generator, fx.semigroup)
    xs = sample_points(fx.generator, per_piece=4)
    D = [x for x in xs if x in st.D]
    Ms = sorted({fx.generator(x) for x in xs})
    for a, b in itertools.product(Ms, repeat=2):
        lhs, rhs = st.round_trip_range(a, b)
        if lhs != rhs:
            return False, f"range round trip fails at ({fmt(a)}, {fmt(b)})"
    for a, b in itertools.product(D, repeat=2):
        lhs, rhs = st.round_trip_domain(a, b)
        if lhs != rhs:
            return False, f"domain round trip fails at ({fmt(a)}, {fmt(b)})"
    return True, f"{len(Ms) ** 2} range pairs, {len(D) ** 2} domain pairs"


# running ---------------------------------------------------------------------------
@dataclass
class ExpectationResult:
    check: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"check": self.check, "passed": self.passed, "detail": self.detail}


@dataclass
class FixtureResult:
    id: str
    description: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "passed": self.passed,
            "expectations": [r.to_json() for r in self.results],
        }


def run_expectation(fx: Fixture, e: dict) -> ExpectationResult:
    name = e["check"]
    fn = CHECKS.get(name)
    if fn is None:
        return ExpectationResult(name, False, f"unknown check {name!r}")
    try:
        ok, detail = fn(fx, e)
    except PreconditionViolated as exc:
        return ExpectationResult(name, False, f"precondition violated: {exc}")
    return ExpectationResult(name, bool(ok), detail)


def run_fixture(fx: Fixture) -> FixtureResult:
    return FixtureResult(fx.id, fx.description, [run_expectation(fx, e) for e in fx.expectations])


def run_corpus(fixtures=None) -> dict:
    fixtures = load_corpus() if fixtures is None else fixtures
    results = [run_fixture(fx) for fx in fixtures]
    n = sum(len(r.results) for r in results)
    ok = sum(1 for r in results for x in r.results if x.passed)
    return {
        "fixtures": [r.to_json() for r in results],
        "summary": {"expectations": n, "passed": ok, "failed": n - ok},
    }
