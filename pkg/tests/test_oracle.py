"""Exact series oracle: recurrence correctness and closed-form checks."""

import math
import random
from fractions import Fraction

from ratdiag.oracle import check_asymptotics, diagonal, series_coeffs
from ratdiag.poly import Direction, SparsePoly, infer_roster, parse_poly


def _random_poly(rng, roster, max_deg=3, n_terms=4, constant=None):
    terms = {}
    d = len(roster)
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(d))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
    if constant is not None:
        terms[(0,) * d] = constant
    return SparsePoly(roster, {e: c for e, c in terms.items() if c})


def test_convolution_identity_random():
    """H * f == G exactly through the computed degree, for random G, H."""
    rng = random.Random(42)
    roster = infer_roster("x+y")
    for _ in range(25):
        G = _random_poly(rng, roster)
        H = _random_poly(rng, roster, constant=Fraction(rng.randint(1, 5)))
        N = 8
        table = series_coeffs(G, H, N)
        for e, want in [
            (e, G.terms.get(e, Fraction(0)))
            for e in table.coeffs
            if sum(e) <= N
        ]:
            got = sum(
                hc * table[tuple(a - b for a, b in zip(e, he))]
                for he, hc in H.terms.items()
                if all(a - b >= 0 for a, b in zip(e, he))
            )
            assert got == want, (e, got, want)


def test_central_binomial_closed_form():
    roster = infer_roster("x+y")
    G = parse_poly("1", roster)
    H = parse_poly("1-x-y", roster)
    seq = diagonal(G, H, Direction((1, 1)), 20)
    assert seq == [Fraction(math.comb(2 * n, n)) for n in range(11)]


def test_geometric_diagonal():
    roster = infer_roster("z")
    seq = diagonal(
        parse_poly("1", roster), parse_poly("1-2*z", roster), Direction((1,)), 4
    )
    assert seq == [1, 2, 4, 8, 16]


def test_apery_zeta2_prefix():
    text = "1-(1+z)*(x+y-x*y)"
    roster = infer_roster(text)
    seq = diagonal(
        parse_poly("1", roster), parse_poly(text, roster), Direction((1, 1, 1)), 12
    )
    assert seq[:4] == [1, 3, 19, 147]


def test_weighted_direction():
    # r = (2, 1) on 1/(1-x-y): f_{(2n,n)} = C(3n, n)
    roster = infer_roster("x+y")
    seq = diagonal(
        parse_poly("1", roster), parse_poly("1-x-y", roster), Direction((2, 1)), 15
    )
    assert seq == [Fraction(math.comb(3 * n, n)) for n in range(6)]


def test_check_asymptotics_decreasing_on_binomial():
    class Term:
        growth_base = 0.25
        power = Fraction(-1, 2)
        constant = 1 / math.sqrt(math.pi)

    roster = infer_roster("x+y")
    seq = diagonal(
        parse_poly("1", roster), parse_poly("1-x-y", roster), Direction((1, 1)), 80
    )
    report = check_asymptotics(seq, [Term()], (10, 20, 40))
    assert report.strictly_decreasing
    assert report.errors[40] < 0.01
    assert not report.flagged
