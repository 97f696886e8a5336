import itertools
import json
from fractions import Fraction as Fr

import pytest
from hypothesis import given
from hypothesis import strategies as st

from genalg.numerics import INF, IntervalPointSet, normalize
from genalg.semigroups import (
    LINPROD,
    MAX,
    SUM,
    PreconditionViolated,
    f_eval,
    gamma_evidence,
    idempotents_of,
    parse_semigroup,
    preimage_right,
    table_semigroup,
)

BUILTINS = [SUM, MAX, LINPROD]
IDS = ["sum", "max", "linprod"]
GRID30 = [Fr(0)] + [Fr(k, 7) for k in range(1, 29)] + [INF]
finite = st.fractions(min_value=0, max_value=20, max_denominator=12)
values = st.one_of(finite, st.just(INF))


def test_f_eval_examples():
    assert f_eval(LINPROD, 1, 1) == 3
    assert f_eval(SUM, Fr(5, 3), 0) == Fr(5, 3)
    assert f_eval(MAX, Fr(1, 4), Fr(1, 2)) == Fr(1, 2)
    assert f_eval(LINPROD, 0, INF) == INF
    assert f_eval(LINPROD, 1, INF) == INF


def test_builtin_flags():
    assert SUM.strictly_monotone and SUM.continuous and SUM.neutral == 0
    assert not MAX.strictly_monotone and MAX.continuous and MAX.neutral == 0
    assert LINPROD.strictly_monotone and LINPROD.continuous and LINPROD.neutral == 0


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
def test_associative_on_grid(F):
    for a, b, c in itertools.product(GRID30, repeat=3):
        assert F(F(a, b), c) == F(a, F(b, c))
    for a in GRID30:
        assert F(a, F.neutral) == a


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
def test_gamma_evidence_builtins(F):
    rep = gamma_evidence(F, 10_000)
    assert rep.ok and rep.checked >= 8000
    if F is MAX:
        a, b, c = rep.strictness_witness
        assert b < c and F(a, b) == F(a, c)
    else:
        assert rep.strictness_witness is None


def test_gamma_evidence_planted_defect():
    # truncated addition on {0, 1, 2}, then 0*2 = 2*0 = 1 is planted
    carrier = [0, 1, 2]
    table = [[0, 1, 2], [1, 2, 2], [2, 2, 2]]
    good = table_semigroup(carrier, table)
    assert gamma_evidence(good).ok
    table[0][2] = 1
    table[2][0] = 1
    bad = table_semigroup(carrier, table, verify=False)
    rep = gamma_evidence(bad)
    triples = [vals for name, vals in rep.violations if name == "associativity"]
    assert triples
    for a, b, c in triples:
        assert bad(bad(a, b), c) != bad(a, bad(b, c))


def test_table_verification_rejects_non_associative():
    with pytest.raises(PreconditionViolated):
        table_semigroup([0, 1, 2], [[0, 1, 1], [1, 2, 2], [1, 2, 2]])


def test_table_round_trip(tmp_path):
    path = tmp_path / "tab.json"
    path.write_text(json.dumps({"carrier": ["0", "1", "inf"], "table": [["0", "1", "inf"], ["1", "1", "inf"], ["inf", "inf", "inf"]]}))
    F = parse_semigroup(f"table:{path}")
    assert F(1, 0) == 1 and F(1, INF) == INF and F.neutral == 0
    with pytest.raises(PreconditionViolated):
        F(Fr(1, 2), 0)


def test_idempotents():
    everything = normalize([(0, True, INF, True)])
    assert idempotents_of(SUM, everything) == IntervalPointSet.points([0, INF])
    assert idempotents_of(MAX, everything) == everything
    assert idempotents_of(LINPROD, everything) == IntervalPointSet.points([0, INF])
    F = table_semigroup([0, 1], [[0, 1], [1, 1]])
    with pytest.raises(PreconditionViolated):
        idempotents_of(F, everything)


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
def test_idempotents_act_as_max(F):
    probe = [Fr(k, 9) for k in range(100)] + [INF]
    found = idempotents_of(F, IntervalPointSet.points(probe))
    # direct scan agrees
    assert found == IntervalPointSet.points([a for a in probe if F(a, a) == a])
    for p in found.parts:
        a = p.lo
        for x in probe:
            assert F(a, x) == max(a, x)


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
@given(a=finite, y0=finite, step=st.fractions(min_value=Fr(1, 10), max_value=3, max_denominator=10))
def test_affine_in_second_argument(F, a, y0, step):
    ys = [y0, y0 + step, y0 + 2 * step]
    if F is MAX and ys[0] < a < ys[2]:
        return  # the kink of max lies between the points
    v = [F(a, y) for y in ys]
    assert v[1] - v[0] == v[2] - v[1]
    assert v[1] - v[0] >= 0


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
@given(y=finite, lo=finite, width=finite)
def test_preimage_right_exact(F, y, lo, width):
    target = normalize([(lo, False, lo + width, True)])
    dom = normalize([(0, True, INF, True)])
    pre = preimage_right(F, y, target, dom)
    for k in range(0, 120):
        x = Fr(k, 6)
        assert (x in pre) == (F(x, y) in target)


@pytest.mark.parametrize("F", BUILTINS, ids=IDS)
@given(x=values, y=values)
def test_commutative_and_lower_bound(F, x, y):
    assert F(x, y) == F(y, x)
    assert F(x, y) >= max(x, y)
