import itertools
import random
from fractions import Fraction as Fr

import pytest

from genalg.associativity import Verdict, check_generator_condition, default_grid
from genalg.generators import plateau_data, pw
from genalg.numerics import INF, IntervalPointSet, normalize
from genalg.properties import (
    LimitVerdict,
    OrbitClass,
    cancellation_check,
    continuity_check,
    diagonal_powers,
    idempotent_points,
    left_limit_T,
    limit_property_check,
    right_limit_T,
    supconorm_axioms,
    supconorm_equivalence_check,
)
from genalg.semigroups import LINPROD, MAX, SUM, PreconditionViolated

from helpers import (
    IDENTITY,
    LEFT_CONTINUOUS,
    T41A,
    T61B,
    T61C,
    T_CONT1,
    T_CONT2,
    T_CONT3,
    T_IDEM,
    T_LIM1,
    T_LIM2,
    op,
)
from randgen import random_generator

h, q = Fr(1, 2), Fr(1, 4)
FS = [SUM, MAX, LINPROD]
FIDS = ["sum", "max", "linprod"]
# t(x) = x / (1 - x): strictly increasing onto [0, inf]
ONTO = pw("non_decreasing", (0, 1, 1, 0, "RECIPROCAL", (1, 1, -1)), (1, 1, 1, 1, "POINT_INF", ()))


def direct_idempotents(g, grid):
    return {x for x in grid if g.T(x, x) == x}


# idempotents --------------------------------------------------------------------------
def test_idempotent_examples():
    assert idempotent_points(op(T_IDEM, SUM)).points == IntervalPointSet.points([0, h, 1])
    res = idempotent_points(op(IDENTITY, MAX))
    assert res.points == normalize([(0, True, 1, True)]) and res.idempotent
    # 1/2 ends the plateau and t(1/2) + t(1/2) = 1/2 falls back to 1/2
    assert idempotent_points(op(T61C, SUM)).points == IntervalPointSet.points([0, h, 1])


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_idempotents_match_direct_scan(name, F):
    g = op(LEFT_CONTINUOUS[name], F)
    grid = sorted(set(default_grid(g)) | {Fr(k, 40) for k in range(41)})
    pts = idempotent_points(g).points
    assert {x for x in grid if x in pts} == direct_idempotents(g, grid)


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("seed", range(20))
def test_idempotents_random(seed, F):
    g = op(random_generator(seed), F)
    grid = default_grid(g)
    pts = idempotent_points(g).points
    assert {x for x in grid if x in pts} == direct_idempotents(g, grid)


# orbits -------------------------------------------------------------------------------
def test_diagonal_power_examples():
    o = diagonal_powers(op(T_LIM2, SUM), h)
    assert o.classification is OrbitClass.FIXED_BELOW_ONE and o.limit == h
    for x in (Fr(1, 10), h, Fr(9, 10)):
        o = diagonal_powers(op(T_LIM1, SUM), x)
        assert o.classification is OrbitClass.REACHES_ONE and o.n == 2
    o = diagonal_powers(op(IDENTITY, MAX), Fr(3, 10))
    assert o.classification is OrbitClass.FIXED_BELOW_ONE and o.limit == Fr(3, 10)


def test_diagonal_powers_needs_two_steps():
    with pytest.raises(PreconditionViolated):
        diagonal_powers(op(IDENTITY, SUM), h, n_max=1)


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("seed", range(20))
def test_orbits_non_decreasing(seed, F):
    t = random_generator(seed)
    if not check_generator_condition(t, F).holds:
        pytest.skip("range condition fails")
    g = op(t, F)
    for x in default_grid(g):
        if 0 < x < 1:
            p = diagonal_powers(g, x, 16).powers
            assert p[0] == x
            assert all(a <= b for a, b in zip(p, p[1:]))
            assert all(b == g.T(x, a) for a, b in zip(p, p[1:]))


# limit property -----------------------------------------------------------------------
def test_limit_examples():
    rep = limit_property_check(op(T_LIM1, SUM))
    assert rep.verdict is LimitVerdict.HOLDS
    assert not rep.criteria["strict"].holds
    rep = limit_property_check(op(T_LIM2, SUM))
    assert rep.verdict is LimitVerdict.FAILS
    x, y = rep.fixed_point
    assert 0 < x <= y < 1 and op(T_LIM2, SUM).T(x, y) == y


def test_limit_for_strictly_increasing_generators():
    # t(0) = 0 is neutral for SUM; holds exactly when t is continuous
    assert limit_property_check(op(IDENTITY, SUM)).verdict is LimitVerdict.HOLDS
    assert limit_property_check(op(T_CONT2, SUM)).verdict is LimitVerdict.FAILS


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("seed", range(30))
def test_limit_verdict_random(seed, F):
    g = op(random_generator(seed), F)
    rep = limit_property_check(g, n_max=32)
    assert rep.verdict is not LimitVerdict.INCONCLUSIVE, rep.conflicts
    if rep.verdict is LimitVerdict.FAILS:
        x, y = rep.fixed_point
        assert 0 < x <= y < 1 and g.T(x, y) == y
        # the orbit of x never passes y
        assert all(p <= y for p in diagonal_powers(g, x, 32).powers)
    else:
        for x in default_grid(g):
            if 0 < x < 1:
                assert diagonal_powers(g, x, 32).classification is not OrbitClass.FIXED_BELOW_ONE


# cancellation -------------------------------------------------------------------------
def cancel_violation(g, grid):
    for x1, x2 in itertools.combinations(grid, 2):
        for y in grid:
            v = g.T(x1, y)
            if v < 1 and v == g.T(x2, y):
                return x1, x2, y
    return None


def test_cancellation_examples():
    rep = cancellation_check(op(IDENTITY, SUM))
    assert rep.conditionally_cancellative
    g = op(T61C, SUM)
    rep = cancellation_check(g)
    assert not rep.conditionally_cancellative and not rep.bad_ii.is_empty()
    assert q in rep.bad_ii
    x1, x2, y = rep.witness
    assert x1 != x2 and g.T(x1, y) == g.T(x2, y) < 1
    assert g.T(Fr(3, 10), 0) == g.T(Fr(2, 5), 0) < 1
    rep = cancellation_check(op(ONTO, SUM))
    assert rep.cancellative and rep.conditionally_cancellative


def test_cancellation_needs_strict_F():
    with pytest.raises(PreconditionViolated):
        cancellation_check(op(IDENTITY, MAX))


@pytest.mark.parametrize("F", [SUM, LINPROD], ids=["sum", "linprod"])
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_cancellation_against_search(name, F):
    t = LEFT_CONTINUOUS[name]
    g = op(t, F)
    try:
        rep = cancellation_check(g)
    except PreconditionViolated:
        pytest.skip("preconditions unmet")
    grid = default_grid(g)
    found = cancel_violation(g, grid)
    if name == "6.1b":
        # M = {1, inf}: F(1, 1) falls in the gap above 1, but 1 is isolated in M,
        # so no second value shares that gap and T is conditionally cancellative
        assert not rep.conditionally_cancellative and not rep.consistent
        assert rep.witness is None and found is None
        assert [(x, y) for x in grid for y in grid if g.T(x, y) < 1] == [(0, 0)]
        return
    assert rep.consistent
    if rep.conditionally_cancellative:
        assert found is None
    else:
        x1, x2, y = rep.witness
        assert x1 != x2 and g.T(x1, y) == g.T(x2, y) < 1


@pytest.mark.parametrize("F", [SUM, LINPROD], ids=["sum", "linprod"])
@pytest.mark.parametrize("seed", range(20))
def test_cancellation_random(seed, F):
    g = op(random_generator(seed), F)
    try:
        rep = cancellation_check(g)
    except PreconditionViolated:
        pytest.skip("preconditions unmet")
    found = cancel_violation(g, default_grid(g))
    if rep.conditionally_cancellative:
        assert found is None
    else:
        x1, x2, y = rep.witness
        assert x1 != x2 and g.T(x1, y) == g.T(x2, y) < 1


# t-supconorm --------------------------------------------------------------------------
def test_supconorm_strict_generators():
    rep = supconorm_equivalence_check(op(ONTO, SUM))
    assert rep.is_supconorm and rep.H.is_empty() and rep.consistent
    # M = [0, 1]: the hull above 1 is (1, 2], and F of it never re-enters M
    rep = supconorm_equivalence_check(op(IDENTITY, SUM))
    assert rep.is_supconorm and rep.hits.is_empty() and rep.consistent


def test_supconorm_gap_generator_is_not_conditionally_cancellative():
    t = pw("non_decreasing", (0, 1, h, 1, "AFFINE", (1, 0)), (h, 0, 1, 1, "AFFINE", (1, 1)))
    g = op(t, SUM)
    assert not cancellation_check(g).conditionally_cancellative
    with pytest.raises(PreconditionViolated):
        supconorm_equivalence_check(g)


def test_supconorm_two_point_range():
    g = op(T61B, LINPROD)
    with pytest.raises(PreconditionViolated):
        supconorm_equivalence_check(g)  # t(0) = 1 is not neutral
    assert supconorm_axioms(g) is None


@pytest.mark.parametrize("F", [SUM, LINPROD], ids=["sum", "linprod"])
@pytest.mark.parametrize("seed", range(30))
def test_supconorm_random(seed, F):
    g = op(random_generator(seed), F)
    try:
        rep = supconorm_equivalence_check(g)
    except PreconditionViolated:
        pytest.skip("preconditions unmet")
    assert rep.consistent
    assert rep.is_supconorm == (rep.associativity is Verdict.ASSOCIATIVE)
    if rep.is_supconorm:
        assert rep.grid_violation is None


# continuity ---------------------------------------------------------------------------
def test_continuity_examples():
    g = op(T_CONT1, MAX)
    rep = continuity_check(g)
    assert not rep.right_continuous
    assert g.T(h, h) == h and right_limit_T(g, h, h) == 1
    assert (h, h) in rep.failures("right")
    rep = continuity_check(op(T_CONT2, MAX))
    assert rep.continuous and rep.continuous_tconorm and not rep.t_continuous
    rep = continuity_check(op(T_CONT3, SUM))
    assert rep.constant_one and rep.continuous


EPSILONS = [Fr(1, 10 ** (2 * k)) for k in range(1, 11)]


def approach(g, x0, y0, side):
    """T along (x0 -/+ eps, y0 -/+ eps); a coordinate on the boundary stays put."""
    out = []
    for e in EPSILONS:
        if side == "left":
            x, y = (x0 - e if x0 > 0 else x0), (y0 - e if y0 > 0 else y0)
        else:
            x, y = (x0 + e if x0 < 1 else x0), (y0 + e if y0 < 1 else y0)
        out.append(g.T(x, y))
    return out


def limit_estimate(values):
    # piecewise-affine T: the tail is constant or within slope * eps of the limit
    return values[-1]


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_continuity_against_sequences(name, F):
    t = LEFT_CONTINUOUS[name]
    g = op(t, F)
    rng = random.Random(f"{name}-{F.name}")
    bps = sorted({b for b in t.breakpoints() if b != INF} | {Fr(0), Fr(1)})
    near = sorted(set(bps) | {b + d for b in bps for d in (Fr(1, 100), -Fr(1, 100)) if 0 <= b + d <= 1})
    pairs = [(rng.choice(near), rng.choice(near)) for _ in range(200)]
    tol = Fr(1, 10**9)
    for x0, y0 in pairs:
        if (x0, y0) != (0, 0):
            L = left_limit_T(g, x0, y0)
            est = limit_estimate(approach(g, x0, y0, "left"))
            assert (L == INF and est == INF) or abs(est - L) <= tol, (x0, y0)
        if (x0, y0) != (1, 1):
            R = right_limit_T(g, x0, y0)
            est = limit_estimate(approach(g, x0, y0, "right"))
            assert (R == INF and est == INF) or abs(est - R) <= tol, (x0, y0)


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_strictly_increasing_gives_left_continuity(name, F):
    t = LEFT_CONTINUOUS[name]
    if not plateau_data(t).H.is_empty():
        pytest.skip("t has plateaus")
    rep = continuity_check(op(t, F))
    assert rep.left_continuous
    assert all(p.left_ok for p in rep.points)


@pytest.mark.parametrize("F", FS, ids=FIDS)
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_global_flags_match_point_table(name, F):
    rep = continuity_check(op(LEFT_CONTINUOUS[name], F))
    if rep.right_continuous:
        assert not rep.failures("right")
    if rep.left_continuous:
        assert not rep.failures("left")
    if rep.right_witness is not None:
        g = op(LEFT_CONTINUOUS[name], F)
        x0, y0 = rep.right_witness
        assert right_limit_T(g, x0, y0) != g.T(x0, y0)
    if rep.left_witness is not None:
        g = op(LEFT_CONTINUOUS[name], F)
        x0, y0 = rep.left_witness
        assert left_limit_T(g, x0, y0) != g.T(x0, y0)


def test_max_fixture_left_continuity_tolerates_range_gaps():
    rep = continuity_check(op(T41A, MAX))
    assert rep.associative is Verdict.ASSOCIATIVE
