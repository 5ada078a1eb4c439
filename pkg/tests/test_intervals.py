"""Interval arithmetic: enclosure soundness under fuzzing, box predicates."""

import random
from fractions import Fraction

import mpmath
import pytest

from ratdiag.intervals import (
    ComplexBox,
    IntervalError,
    RealInterval,
    eval_poly_box,
    eval_poly_real,
    mpf_to_fraction,
)
from ratdiag.poly import SparsePoly, infer_roster


def _rand_fraction(rng, lo=-20, hi=20, den=16):
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def _interval_around(x: Fraction, rng, prec=53) -> RealInterval:
    # outward float padding so the exact rational is provably inside
    pad = Fraction(rng.randint(0, 8), 64)
    slack = 1e-9 * (1.0 + abs(float(x)))
    return RealInterval(float(x - pad) - slack, float(x + pad) + slack, prec)


def test_enclosure_soundness_fuzz_real():
    """>= 10^4 random arithmetic chains: exact value stays inside."""
    rng = random.Random(12345)
    checked = 0
    while checked < 6000:
        x, y = _rand_fraction(rng), _rand_fraction(rng)
        ix, iy = _interval_around(x, rng), _interval_around(y, rng)
        for op in ("add", "sub", "mul", "div", "square", "abs"):
            if op == "add":
                exact, box = x + y, ix + iy
            elif op == "sub":
                exact, box = x - y, ix - iy
            elif op == "mul":
                exact, box = x * y, ix * iy
            elif op == "div":
                if iy.contains(0):
                    continue
                exact, box = x / y, ix / iy
            elif op == "square":
                exact, box = x * x, ix.square()
            else:
                exact, box = abs(x), abs(ix)
            assert box.contains(exact), (op, x, y)
            checked += 1
    assert checked >= 6000


def test_enclosure_soundness_fuzz_complex():
    rng = random.Random(999)
    checked = 0
    while checked < 4000:
        xr, xi = _rand_fraction(rng), _rand_fraction(rng)
        yr, yi = _rand_fraction(rng), _rand_fraction(rng)
        bx = ComplexBox(_interval_around(xr, rng), _interval_around(xi, rng))
        by = ComplexBox(_interval_around(yr, rng), _interval_around(yi, rng))
        for op in ("add", "sub", "mul"):
            if op == "add":
                er, ei = xr + yr, xi + yi
                box = bx + by
            elif op == "sub":
                er, ei = xr - yr, xi - yi
                box = bx - by
            else:
                er, ei = xr * yr - xi * yi, xr * yi + xi * yr
                box = bx * by
            assert box.re.contains(er) and box.im.contains(ei), (op, xr, xi, yr, yi)
            checked += 1
    assert checked >= 4000


def test_poly_evaluation_enclosure():
    rng = random.Random(7)
    roster = infer_roster("x+y")
    for _ in range(300):
        terms = {
            (rng.randint(0, 3), rng.randint(0, 3)): _rand_fraction(rng, -5, 5, 8)
            for _ in range(rng.randint(1, 5))
        }
        p = SparsePoly(roster, terms)
        xr, yr = _rand_fraction(rng, -3, 3, 8), _rand_fraction(rng, -3, 3, 8)
        exact = p.eval([xr, yr])
        boxes = [
            ComplexBox(_interval_around(xr, rng), RealInterval(0, 0, 53)),
            ComplexBox(_interval_around(yr, rng), RealInterval(0, 0, 53)),
        ]
        out = eval_poly_box(p, boxes, 53)
        assert out.re.contains(exact) and out.im.contains(0)
        real_out = eval_poly_real(
            p, [_interval_around(xr, rng), _interval_around(yr, rng)], 53
        )
        assert real_out.contains(exact)


def test_division_by_zero_interval_raises():
    one = RealInterval(1, 1, 53)
    zero = RealInterval(-1, 1, 53)
    with pytest.raises(IntervalError):
        one / zero


def test_predicates():
    a = RealInterval(1, 2, 53)
    b = RealInterval(3, 4, 53)
    c = RealInterval(1.5, 3.5, 53)
    assert a.disjoint(b) and not a.disjoint(c)
    assert a.strictly_positive()
    assert RealInterval(-2, -1, 53).strictly_negative()
    assert not RealInterval(-1, 1, 53).strictly_positive()
    box = ComplexBox.from_complex(1 + 1j, 0.25, 53)
    assert not box.contains_zero()
    assert ComplexBox.from_complex(0.1 + 0.1j, 0.5, 53).contains_zero()


def test_hull_and_with_prec():
    a = RealInterval(1, 2, 53)
    b = RealInterval(5, 6, 53)
    h = a.hull(b)
    assert h.contains(Fraction(1)) and h.contains(Fraction(6))
    hp = a.with_prec(212)
    assert hp.prec == 212
    assert hp.contains(Fraction(3, 2))


def test_mpf_to_fraction_round_trip():
    for x in (0.5, -1.25, 3.0, 1e-10):
        f = mpf_to_fraction(mpmath.mpf(x))
        assert f == Fraction(x)


def test_widths_shrink_with_precision():
    with mpmath.workprec(300):
        x = RealInterval(mpmath.mpf(1) / 3, None, 256)
    y = RealInterval(1 / 3, None, 53)
    assert x.width() <= y.width() + 1e-16
