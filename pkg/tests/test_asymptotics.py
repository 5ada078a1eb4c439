"""Leading-term asymptotics: symmetry, invariances, residue reduction."""

import math
from fractions import Fraction

import pytest

from ratdiag.asymptotics import (
    AsymptoticExpansion,
    AsymptoticTerm,
    format_asymptotics,
    leading_term,
    phase_hessian,
)
from ratdiag.oracle import check_asymptotics, diagonal
from ratdiag.poly import Direction, infer_roster, parse_poly


def _gh(text, num="1"):
    roster = infer_roster(text)
    return parse_poly(num, roster), parse_poly(text, roster), roster


PHI = (math.sqrt(5) - 1) / 2  # positive root of x^2 + x - 1


# -- phase Hessian -----------------------------------------------------------


def test_hessian_symmetry_walk():
    _, H, _ = _gh("1-z*(x^2*y+y+x*y^2+x)")
    hess = phase_hessian(H, Direction((1, 1, 1)), (0.25, 1.0, 1.0))
    for i in range(2):
        for j in range(2):
            assert hess.entries[i][j] == hess.entries[j][i]


def test_hessian_symmetry_apery():
    _, H, _ = _gh("1-(1+z)*(x+y-x*y)")
    w = (PHI, PHI * PHI, PHI * PHI)  # roster order (z, x, y)
    hess = phase_hessian(H, Direction((1, 1, 1)), w)
    assert hess.entries[0][1] == hess.entries[1][0]
    assert abs(hess.det - math.sqrt(5) * PHI) < 1e-9


def test_hessian_trivial_for_one_variable():
    _, H, _ = _gh("1-2*x")
    hess = phase_hessian(H, Direction((1,)), (0.5,))
    assert hess.entries == []
    assert hess.det == 1.0


# -- invariances --------------------------------------------------------------


def test_scaling_invariance():
    G, H, roster = _gh("1-x-y")
    t1 = leading_term(G, H, Direction((1, 1)), (0.5, 0.5))
    G3 = G.scale(Fraction(3))
    H3 = H.scale(Fraction(3))
    t2 = leading_term(G3, H3, Direction((1, 1)), (0.5, 0.5))
    assert abs(t1.growth_base - t2.growth_base) < 1e-14
    assert t1.power == t2.power
    assert abs(t1.constant - t2.constant) < 1e-12


def test_permutation_invariance_walk():
    # same walk model with the variable roster rotated
    G1, H1, _ = _gh("1-z*(x^2*y+y+x*y^2+x)")  # roster (z, x, y)
    G2, H2, _ = _gh("1-x*(y^2*z+z+y*z^2+y)")  # roster (x, y, z), same shape
    r = Direction((1, 1, 1))
    t1 = leading_term(G1, H1, r, (0.25, 1.0, 1.0))
    t2 = leading_term(G2, H2, r, (0.25, 1.0, 1.0))
    assert abs(t1.growth_base - t2.growth_base) < 1e-12
    assert t1.power == t2.power
    assert abs(abs(t1.constant) - abs(t2.constant)) < 1e-10
    assert abs(t1.constant - t2.constant) < 1e-10  # branch is real here


# -- d = 1 residue reduction ---------------------------------------------------


@pytest.mark.parametrize(
    "num,den,pole",
    [
        ("1", "1-2*x", 0.5),
        ("1", "1-x-x^2", PHI),
        ("1+x", "1-3*x", 1 / 3),
        ("2-x", "2-x-x^3", 1.0),
        ("1", "1-1/6*x-1/6*x^2", 2.0),
    ],
)
def test_residue_formula_one_variable(num, den, pole):
    G, H, roster = _gh(den, num)
    term = leading_term(G, H, Direction((1,)), (pole,))
    assert term.power == 0
    assert abs(term.growth_base - pole) < 1e-9
    # classical simple-pole residue: f_n ~ (-G(w) / (w H'(w))) w^{-n}
    Hp = H.partial(0)
    residue = -float(G.eval([Fraction(pole).limit_denominator(10**12)])) / (
        pole * float(Hp.eval([Fraction(pole).limit_denominator(10**12)]))
    )
    assert abs(term.constant - residue) < 1e-8
    # and both match the exact series
    seq = diagonal(G, H, Direction((1,)), 40)
    pred = residue * pole ** -40
    assert abs(float(seq[40]) / pred - 1) < 0.05


# -- oracle agreement ----------------------------------------------------------


def test_oracle_match_binomial_one_over_n():
    G, H, _ = _gh("1-x-y")
    term = leading_term(G, H, Direction((1, 1)), (0.5, 0.5))
    seq = diagonal(G, H, Direction((1, 1)), 80)
    report = check_asymptotics(seq, [term], (10, 20, 40))
    assert report.strictly_decreasing
    for n, err in report.errors.items():
        assert err <= 0.5 / n


# -- formatting -----------------------------------------------------------------


def test_format_examples():
    t_binom = AsymptoticTerm((0.5, 0.5), 0.25, Fraction(-1, 2), 1 / math.sqrt(math.pi))
    assert (
        format_asymptotics(AsymptoticExpansion([t_binom]))
        == "(0.25)^(-n)n^(-1/2)(0.56)"
    )
    t_geo = AsymptoticTerm((0.5,), 0.5, Fraction(0), 1.0)
    assert format_asymptotics(AsymptoticExpansion([t_geo])) == "(0.5)^(-n)n^(0)(1.0)"
    t_cx = AsymptoticTerm((0,), 0.09 + 6.2e-39j, Fraction(-1), 0.47 - 5.7e-40j)
    out = format_asymptotics(AsymptoticExpansion([t_cx]))
    assert out == "(0.09+6.2e-39im)^(-n)n^(-1)(0.47-5.7e-40im)"
    two = AsymptoticExpansion([t_geo, t_geo])
    assert " + " in format_asymptotics(two)
