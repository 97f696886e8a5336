"""Exact Fourier-Motzkin elimination for systems of strict/non-strict inequalities.

Rows have integer coefficients and a constant from an ordered abelian group:

* additive group: ``sum(a_i * v_i) + c  (< or <=)  0`` with rational c;
* multiplicative group: ``prod(v_i ** a_i) * c  (< or <=)  1`` with positive
  rational c, used for ``x + y + xy`` after the substitution ``v = 1 + x``.

Rows are never divided by their coefficient gcd (that would need roots in the
multiplicative group); bounds on a single variable are kept as ``(c, n)``
meaning "the n-th part of c", i.e. ``c / n`` or ``c ** (1/n)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional


class AdditiveGroup:
    name = "add"
    identity = Fraction(0)

    @staticmethod
    def op(a, b):
        return a + b

    @staticmethod
    def inv(a):
        return -a

    @staticmethod
    def pow(a, n: int):
        return a * n

    @staticmethod
    def sign(a) -> int:
        return (a > 0) - (a < 0)

    @staticmethod
    def embed(x):
        return Fraction(x)

    @staticmethod
    def extract(a):
        return a

    @staticmethod
    def approx(c, n: int) -> float:
        return float(Fraction(c) / n)

    @staticmethod
    def exact_root(c, n: int) -> Optional[Fraction]:
        return Fraction(c) / n


class MultiplicativeGroup:
    name = "mul"
    identity = Fraction(1)

    @staticmethod
    def op(a, b):
        return a * b

    @staticmethod
    def inv(a):
        return 1 / a

    @staticmethod
    def pow(a, n: int):
        return a ** n

    @staticmethod
    def sign(a) -> int:
        return (a > 1) - (a < 1)

    @staticmethod
    def embed(x):
        return 1 + Fraction(x)

    @staticmethod
    def extract(a):
        return a - 1

    @staticmethod
    def approx(c, n: int) -> float:
        c = Fraction(c)
        return math.exp((math.log(c.numerator) - math.log(c.denominator)) / n)

    @staticmethod
    def exact_root(c, n: int) -> Optional[Fraction]:
        c = Fraction(c)
        p, q = _int_root(c.numerator, n), _int_root(c.denominator, n)
        if p is None or q is None:
            return None
        return Fraction(p, q)


def _int_root(m: int, n: int) -> Optional[int]:
    if m < 0:
        return None
    if m in (0, 1) or n == 1:
        return m
    r = int(round(m ** (1.0 / n))) if m.bit_length() < 1000 else 1 << (m.bit_length() // n)
    # Newton steps from above
    r = max(r, 1)
    while r ** n > m:
        r = ((n - 1) * r + m // r ** (n - 1)) // n
    while (r + 1) ** n <= m:
        r += 1
    return r if r ** n == m else None


@dataclass(frozen=True)
class Row:
    coeffs: tuple
    const: object
    strict: bool


@dataclass(frozen=True)
class Bound:
    """The value ``c`` divided by ``n`` in the group (a root for products)."""

    c: object
    n: int


def cmp_bounds(g, a: Bound, b: Bound) -> int:
    return g.sign(g.op(g.pow(a.c, b.n), g.inv(g.pow(b.c, a.n))))


def _nvars(rows) -> int:
    return len(rows[0].coeffs) if rows else 0


def _dominates(g, r: Row, s: Row) -> bool:
    """True when r implies s; both rows lie on the same primitive direction."""
    kg = math.gcd(*[abs(x) for x in r.coeffs])
    mg = math.gcd(*[abs(x) for x in s.coeffs])
    # compare C_r / kg against C_s / mg: the larger constant is tighter
    diff = g.sign(g.op(g.pow(r.const, mg), g.inv(g.pow(s.const, kg))))
    if diff:
        return diff > 0
    return r.strict or not s.strict


def _direction(coeffs) -> tuple:
    gcd = math.gcd(*[abs(x) for x in coeffs])
    return tuple(x // gcd for x in coeffs)


def simplify(g, rows) -> Optional[list]:
    """Drop redundant rows; return None when a constant row is violated."""
    best: dict = {}
    for r in rows:
        if not any(r.coeffs):
            s = g.sign(r.const)
            if s > 0 or (s == 0 and r.strict):
                return None
            continue
        key = _direction(r.coeffs)
        cur = best.get(key)
        if cur is None or _dominates(g, r, cur):
            best[key] = r
    out = list(best.values())
    # opposite directions on the same line may already clash
    for key, r in best.items():
        opp = tuple(-x for x in key)
        s = best.get(opp)
        j = next(i for i, x in enumerate(key) if x)
        if s is not None and key[j] > 0:
            if _combine(g, r, s, j) is None:
                return None
    return out


def _combine(g, p: Row, n: Row, j: int) -> Optional[Row]:
    """Eliminate variable j from a row with positive and one with negative coefficient."""
    a, b = p.coeffs[j], -n.coeffs[j]
    gcd = math.gcd(a, b)
    lp, ln = b // gcd, a // gcd
    coeffs = tuple(lp * x + ln * y for x, y in zip(p.coeffs, n.coeffs))
    const = g.op(g.pow(p.const, lp), g.pow(n.const, ln))
    row = Row(coeffs, const, p.strict or n.strict)
    if not any(coeffs):
        s = g.sign(const)
        if s > 0 or (s == 0 and row.strict):
            return None
    return row


def eliminate(g, rows, j: int) -> Optional[list]:
    pos = [r for r in rows if r.coeffs[j] > 0]
    neg = [r for r in rows if r.coeffs[j] < 0]
    out = [r for r in rows if r.coeffs[j] == 0]
    for p in pos:
        for n in neg:
            r = _combine(g, p, n, j)
            if r is None:
                return None
            out.append(r)
    return simplify(g, out)


def feasible(g, rows) -> bool:
    rows = simplify(g, rows)
    if rows is None:
        return False
    nv = _nvars(rows)
    for j in reversed(range(nv)):
        rows = eliminate(g, rows, j)
        if rows is None:
            return False
    return True


@dataclass(frozen=True)
class Interval1D:
    """Projection of a system onto one variable; None bounds are unbounded."""

    lo: Optional[Bound]
    lo_strict: bool
    hi: Optional[Bound]
    hi_strict: bool


def bounds_of(g, rows, j: int) -> tuple:
    """Tightest bounds on variable j from rows whose only variable is j."""
    lo = hi = None
    lo_s = hi_s = False
    for r in rows:
        a = r.coeffs[j]
        if any(x for i, x in enumerate(r.coeffs) if i != j) or a == 0:
            continue
        if a > 0:
            b = Bound(g.inv(r.const), a)
            if hi is None or cmp_bounds(g, b, hi) < 0 or (cmp_bounds(g, b, hi) == 0 and r.strict):
                hi, hi_s = b, r.strict
        else:
            b = Bound(r.const, -a)
            if lo is None or cmp_bounds(g, b, lo) > 0 or (cmp_bounds(g, b, lo) == 0 and r.strict):
                lo, lo_s = b, r.strict
    return Interval1D(lo, lo_s, hi, hi_s)


def project(g, rows, keep: int) -> Optional[Interval1D]:
    """Exact projection onto variable ``keep``; None when infeasible."""
    rows = simplify(g, rows)
    if rows is None:
        return None
    for j in reversed(range(_nvars(rows))):
        if j == keep:
            continue
        rows = eliminate(g, rows, j)
        if rows is None:
            return None
    iv = bounds_of(g, rows, keep)
    if iv.lo is not None and iv.hi is not None:
        c = cmp_bounds(g, iv.lo, iv.hi)
        if c > 0 or (c == 0 and (iv.lo_strict or iv.hi_strict)):
            return None
    return iv


def _simplest_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Simplest rational in the open interval (lo, hi), lo < hi."""
    fl = math.floor(lo)
    if fl + 1 < hi:
        return Fraction(fl + 1)
    a, b = lo - fl, hi - fl
    if a == 0:
        return fl + Fraction(1, math.floor(1 / b) + 1)
    return fl + 1 / _simplest_between(1 / b, 1 / a)


def _simplicity(r: Fraction) -> tuple:
    return (r.denominator, abs(r.numerator))


def _pick_additive(iv: Interval1D) -> Fraction:
    lo = None if iv.lo is None else Fraction(iv.lo.c) / iv.lo.n
    hi = None if iv.hi is None else Fraction(iv.hi.c) / iv.hi.n
    if lo is None and hi is None:
        cands = [Fraction(0)]
    elif lo is None:
        cands = [min(Fraction(0), Fraction(math.floor(hi) - 1))]
    elif hi is None:
        cands = [max(Fraction(0), Fraction(math.floor(lo) + 1))] if lo < 0 else [Fraction(math.floor(lo) + 1)]
    else:
        cands = [_simplest_between(lo, hi)]
    if lo is not None and not iv.lo_strict:
        cands.append(lo)
    if hi is not None and not iv.hi_strict:
        cands.append(hi)
    return min(cands, key=_simplicity)


def pick(g, iv: Interval1D) -> Optional[Fraction]:
    """A simple rational group value inside the interval, or None."""
    lo, hi = iv.lo, iv.hi
    if lo is not None and hi is not None and cmp_bounds(g, lo, hi) == 0:
        return g.exact_root(lo.c, lo.n)
    if g is AdditiveGroup:
        return _pick_additive(iv)

    # multiplicative: float-guided candidates, each confirmed exactly
    def ok(r: Fraction) -> bool:
        b = Bound(r, 1)
        if lo is not None:
            c = cmp_bounds(g, b, lo)
            if c < 0 or (c == 0 and iv.lo_strict):
                return False
        if hi is not None:
            c = cmp_bounds(g, b, hi)
            if c > 0 or (c == 0 and iv.hi_strict):
                return False
        return r > 0

    cands = []
    for b in (lo, hi):
        if b is not None:
            r = g.exact_root(b.c, b.n)
            if r is not None:
                cands.append(r)
    lf = 0.0 if lo is None else g.approx(lo.c, lo.n)
    hf = lf * 2 + 2 if hi is None else g.approx(hi.c, hi.n)
    mid = (lf + hf) / 2
    for den in (1, 2, 3, 4, 5, 6, 8, 10, 12, 16, 20, 32, 64, 100, 128, 1000):
        cands.extend(Fraction(n, den) for n in (math.floor(mid * den), math.ceil(mid * den)))
    cands.extend(Fraction(mid).limit_denominator(1 << k) for k in range(6, 60, 6))
    good = [r for r in cands if ok(r)]
    return min(good, key=_simplicity) if good else None


def substitute(g, rows, j: int, value) -> list:
    out = []
    for r in rows:
        a = r.coeffs[j]
        if a == 0:
            out.append(r)
            continue
        coeffs = tuple(0 if i == j else x for i, x in enumerate(r.coeffs))
        out.append(Row(coeffs, g.op(r.const, g.pow(value, a)), r.strict))
    return out


def sample(g, rows, order: Optional[list] = None) -> Optional[list]:
    """A rational point of the system (group values), or None.

    Variables are fixed in ``order`` (default 0, 1, ...); each choice is the
    simplest rational allowed by the projection of the remaining system.
    """
    nv = _nvars(rows)
    rows = simplify(g, rows)
    if rows is None:
        return None
    order = list(order) if order is not None else list(range(nv))
    values: list = [None] * nv
    for pos, j in enumerate(order):
        rest = rows
        for k in reversed(order[pos + 1:]):
            rest = eliminate(g, rest, k)
            if rest is None:
                return None
        iv = bounds_of(g, rest, j)
        v = pick(g, iv)
        if v is None:
            return None
        values[j] = v
        rows = simplify(g, substitute(g, rows, j, v))
        if rows is None:
            return None
    return values
