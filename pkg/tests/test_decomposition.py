import itertools
import random
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genalg.associativity import brute_force_assoc, build_generated_op
from genalg.decomposition import decompose, g_m, otimes, star_system
from genalg.generators import DomainError, plateau_data, pw, range_of
from genalg.inverses import weak_pseudo_inverse
from genalg.numerics import INF, IntervalPointSet, normalize
from genalg.semigroups import LINPROD, MAX, SUM, PreconditionViolated

from helpers import IDENTITY, LEFT_CONTINUOUS, T31, T41A, T41B, T61C, T_S7
from randgen import random_generator

h, q = Fr(1, 2), Fr(1, 4)


def iv(lo, hi, lo_closed=True, hi_closed=True):
    return normalize([(lo, lo_closed, hi, hi_closed)])


def g_m_oracle(M: IntervalPointSet, x):
    """min(M ∩ [sup([0,x] ∩ M), inf([x,inf] ∩ M)]) with sup of the empty set 0."""
    below = M.intersection(iv(0, x))
    above = M.intersection(iv(x, INF))
    lo = below.sup() if not below.is_empty() else Fr(0)
    hi = above.inf() if not above.is_empty() else INF
    window = M.intersection(iv(lo, hi))
    m = window.inf()
    assert m in window  # the minimum exists
    return m


def probe_values(dec, extra=()):
    pts = {Fr(0), dec.t0}
    for g in dec.proper_gaps:
        for e in (g.b, g.d):
            if e == INF:
                continue
            pts.update({e, e - Fr(1, 1000), e + Fr(1, 1000)})
        if g.d != INF:
            pts.add((g.b + g.d) / 2)
        else:
            pts.add(g.b + 3)
    pts.update(extra)
    pts.add(INF)
    return sorted(p for p in pts if p >= 0)


# decompose ----------------------------------------------------------------------------
def test_decompose_first_range():
    dec = decompose(T41A)
    assert dec.U == [(q, h), (h, Fr(3, 4)), (1, INF)]
    assert dec.V == [q, h, 1]


def test_decompose_second_range():
    dec = decompose(T41B)
    assert dec.U == [(Fr(6, 5), Fr(3, 2)), (Fr(3, 2), Fr(5, 2)), (Fr(11, 4), 4)]
    assert dec.V == [Fr(6, 5), Fr(3, 2), Fr(11, 4)]
    assert range_of(T41B).intersection(iv(Fr(5, 2), 4)) == iv(Fr(5, 2), Fr(11, 4), lo_closed=False)


def test_decompose_surjective():
    onto = pw(
        "non_decreasing",
        (0, 1, Fr(3, 4), 1, "AFFINE", (1, 0)),
        (Fr(3, 4), 0, 1, 0, "RECIPROCAL", (Fr(3, 16), 1, 0)),
        (1, 1, 1, 1, "POINT_INF", ()),
    )
    dec = decompose(onto)
    assert dec.degenerate and dec.U == [(INF, INF)] and dec.V == [INF]


def test_decompose_preconditions():
    with pytest.raises(PreconditionViolated):
        decompose(T31)
    with pytest.raises(PreconditionViolated):
        decompose(T_S7)


def test_decomposition_json():
    assert decompose(T61C).to_json() == {
        "t0": "0",
        "gaps": [{"b": "1/4", "d": "1/2", "c": "1/4"}, {"b": "1", "d": "inf", "c": "1"}],
        "extra_points": [],
    }


def check_decomposition_invariants(t):
    dec = decompose(t)
    M = range_of(t)
    assert dec.reconstruct() == M
    gaps = dec.proper_gaps
    for g in gaps:
        assert g.b < g.d and g.c == g.b and g.b in M
        inV = {v for v in dec.V if g.b <= v <= g.d}
        assert inV in ({g.b}, {g.b, g.d})
    for a, b in itertools.combinations(gaps, 2):
        assert a.d <= b.b or b.d <= a.b
    return dec


@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_decomposition_invariants(name):
    check_decomposition_invariants(LEFT_CONTINUOUS[name])


@given(st.integers(0, 10_000))
@settings(max_examples=60)
def test_decomposition_invariants_random(seed):
    check_decomposition_invariants(random_generator(seed))


# G_M -----------------------------------------------------------------------------------
def test_g_m_examples():
    dec = decompose(T41A)
    assert g_m(dec, Fr(3, 10)) == q
    assert g_m(dec, Fr(7, 10)) == h
    assert g_m(dec, Fr(9, 10)) == Fr(9, 10)
    dec = decompose(T41B)
    for x in (Fr(5, 4), Fr(7, 5), Fr(149, 100)):
        assert g_m(dec, x) == Fr(6, 5)
    assert g_m(dec, Fr(1, 2)) == 1  # below t(0)


@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_g_m_properties(name):
    t = LEFT_CONTINUOUS[name]
    dec = decompose(t)
    M = range_of(t)
    tinv = weak_pseudo_inverse(t)
    xs = probe_values(dec, [Fr(k, 16) for k in range(0, 80)])
    prev = None
    for x in xs:
        v = g_m(dec, x)
        assert v == g_m_oracle(M, x), x
        assert v in M
        assert v == t(tinv(x)), x
        assert (v == x) == (x in M or x <= dec.t0 and x == dec.t0)
        if x <= dec.t0:
            assert v == dec.t0
        if prev is not None:
            assert prev <= v
        prev = v


@given(st.integers(0, 10_000), st.data())
@settings(max_examples=25)
def test_g_m_equal_iff_no_range_between(seed, data):
    t = random_generator(seed)
    dec = decompose(t)
    M = range_of(t)
    rest = M.difference(IntervalPointSet.points([dec.t0]))
    rng = random.Random(data.draw(st.integers(0, 2**32)))
    hi = max(p.hi for p in M.parts if p.hi != INF) + 1
    for _ in range(20):
        x, y = sorted(Fr(rng.randint(0, 400), 400) * hi for _ in range(2))
        between = rest.intersection(iv(x, y, lo_closed=False))
        assert (g_m(dec, x) == g_m(dec, y)) == between.is_empty()


# otimes --------------------------------------------------------------------------------
def test_otimes_examples():
    assert otimes(decompose(T41A), MAX, q, h) == h
    assert otimes(decompose(T61C), SUM, Fr(1, 5), q) == q
    with pytest.raises(DomainError):
        otimes(decompose(T61C), SUM, Fr(3, 8), q)


@pytest.mark.parametrize("F", [SUM, MAX, LINPROD], ids=["sum", "max", "linprod"])
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_otimes_stays_in_range(name, F):
    t = LEFT_CONTINUOUS[name]
    dec = decompose(t)
    M = dec.M
    pts = [t(x) for x in [Fr(k, 10) for k in range(11)]]
    for x, y in itertools.product(pts, repeat=2):
        v = otimes(dec, F, x, y)
        assert v in M
        assert (v == F(x, y)) == (F(x, y) in M)


# star system ---------------------------------------------------------------------------
def test_star_examples():
    st61 = star_system(T61C, SUM)
    assert st61.tinv(st61.t_star(h)) == h
    assert st61.round_trip_range(Fr(1, 5), q) == (q, q)
    with pytest.raises(DomainError):
        st61.t_star(Fr(3, 8))
    ident = star_system(IDENTITY, SUM)
    g = build_generated_op(IDENTITY, SUM)
    for x, y in itertools.product([Fr(k, 7) for k in range(8)], repeat=2):
        assert ident.f_star(x, y) == g.T(x, y)


def d_points(D: IntervalPointSet, n=6):
    pts = []
    for p in D.parts:
        if p.is_point:
            pts.append(p.lo)
            continue
        pts += [p.lo + (p.hi - p.lo) * Fr(k, n) for k in range(1, n)]
        pts += [e for e, c in ((p.lo, p.lo_closed), (p.hi, p.hi_closed)) if c]
    return sorted(set(pts))


@pytest.mark.parametrize("F", [SUM, MAX, LINPROD], ids=["sum", "max", "linprod"])
@pytest.mark.parametrize("name", sorted(LEFT_CONTINUOUS))
def test_star_identities(name, F):
    t = LEFT_CONTINUOUS[name]
    S = star_system(t, F)
    D = plateau_data(t).D
    dpts = d_points(D)
    vals = [S.t_star(x) for x in dpts]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    for x in dpts:
        assert S.tinv(S.t_star(x)) == x
    M = S.dec.M
    for y in probe_values(S.dec):
        if y in M:
            assert S.t_star(S.tinv(y)) == y
    for x, y in itertools.product(dpts, repeat=2):
        a, b = S.round_trip_domain(x, y)
        assert a == b
        a, b = S.round_trip_range(S.t_star(x), S.t_star(y))
        assert a == b


def _assoc_witness(op, pts):
    for a, b, c in itertools.product(pts, repeat=3):
        if op(op(a, b), c) != op(a, op(b, c)):
            return (a, b, c)
    return None


@pytest.mark.parametrize("F", [SUM, MAX, LINPROD], ids=["sum", "max", "linprod"])
@pytest.mark.parametrize("seed", range(12))
def test_associativity_transfers(seed, F):
    t = random_generator(seed, max_segments=4)
    S = star_system(t, F)
    dpts = d_points(plateau_data(t).D, n=3)
    mpts = [S.t_star(x) for x in dpts]
    w_star = _assoc_witness(S.f_star, dpts)
    w_otimes = _assoc_witness(lambda x, y: otimes(S.dec, F, x, y), mpts)
    g = build_generated_op(t, F)
    w_T = brute_force_assoc(g, grid=dpts)
    assert (w_star is None) == (w_otimes is None) == (w_T is None)
    if w_star is not None:
        assert w_otimes == tuple(S.t_star(v) for v in w_star)
