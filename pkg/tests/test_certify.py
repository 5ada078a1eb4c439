"""Krawczyk certification and refinement on constructed systems."""

from fractions import Fraction

import pytest

from ratdiag.certify import (
    CertificationFailure,
    PrecisionCapError,
    certify_adaptive,
    krawczyk_certify,
    refine,
)
from ratdiag.poly import SparsePoly, infer_roster, parse_poly


def _univariate(text):
    roster = infer_roster("x")
    return [parse_poly(text, roster)]


def test_certify_known_roots():
    polys = _univariate("x^2-2")
    sol = krawczyk_certify(polys, [1.41421356], 1e-4)
    assert sol.certified
    # the box contains sqrt(2): its square contains 2
    assert sol.box[0].re.square().contains(Fraction(2))


def test_certify_linear_system():
    roster = infer_roster("x+y")
    polys = [parse_poly("x+y-1", roster), parse_poly("x-y", roster)]
    sol = krawczyk_certify(polys, [0.5, 0.5], 1e-6)
    assert sol.certified
    assert sol.box[0].re.contains(Fraction(1, 2))
    assert sol.box[1].re.contains(Fraction(1, 2))


def test_certify_fails_away_from_root():
    polys = _univariate("x^2-2")
    with pytest.raises(CertificationFailure):
        krawczyk_certify(polys, [1.0], 1e-4)


@pytest.mark.parametrize("root", [Fraction(1, 3), Fraction(-7, 5), Fraction(4)])
def test_constructed_rational_roots_contained(root):
    # (x - root)(x - root - 1): simple roots with exact locations
    roster = infer_roster("x")
    x = SparsePoly.var(roster, "x")
    c = SparsePoly(roster, {(0,): root})
    c1 = SparsePoly(roster, {(0,): root + 1})
    polys = [(x - c) * (x - c1)]
    sol = certify_adaptive(polys, [float(root) + 1e-9], real=True)
    assert sol.certified and sol.real
    assert sol.box[0].re.contains(root)


def test_refine_narrows_and_keeps_root():
    roster = infer_roster("x")
    polys = [parse_poly("x^2-2", roster)]
    sol = certify_adaptive(polys, [1.4142135623730951], real=True)
    fine = refine(sol, polys, 1e-25)
    assert fine.width() <= 1e-25
    assert fine.width() <= sol.width()
    assert fine.box[0].re.square().contains(Fraction(2))
    assert fine.intersects(sol)


def test_refine_precision_cap():
    roster = infer_roster("x")
    polys = [parse_poly("x^2-2", roster)]
    sol = certify_adaptive(polys, [1.4142135623730951], real=True)
    with pytest.raises(PrecisionCapError) as exc:
        refine(sol, polys, 1e-60, max_bits=64)
    best = exc.value.best
    assert best.certified
    assert best.box[0].re.square().contains(Fraction(2))


def test_real_certification_pins_imaginary_part():
    roster = infer_roster("x")
    polys = [parse_poly("x^3-2*x+1", roster)]  # roots 1, (-1±sqrt5)/2
    sol = certify_adaptive(polys, [0.618034], real=True)
    assert sol.real
    assert sol.box[0].im.contains(0)
    # exact root is (sqrt(5) - 1)/2: verify by the defining polynomial
    b = sol.box[0].re
    val = b * b * b - b - b + 1  # x^3 - 2x + 1 over the interval
    assert val.contains(0)
