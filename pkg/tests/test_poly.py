"""Exact polynomial layer: parsing, arithmetic, real/imaginary splitting."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratdiag.poly import (
    Direction,
    PolyError,
    SparsePoly,
    infer_roster,
    parse_poly,
    re_im_split,
    square_free_part,
)

# -- strategies ------------------------------------------------------------

_coeffs = st.fractions(
    min_value=-50, max_value=50, max_denominator=20
).filter(lambda f: f != 0)


def _random_poly(names=("x", "y"), max_terms=6, max_deg=4):
    roster = infer_roster("+".join(names))
    exps = st.tuples(*[st.integers(0, max_deg) for _ in names])
    return st.dictionaries(exps, _coeffs, min_size=1, max_size=max_terms).map(
        lambda terms: SparsePoly(roster, dict(terms))
    )


# -- parsing ---------------------------------------------------------------


def test_roster_first_appearance_order():
    assert infer_roster("1-(1+z)*(x+y-x*y)").names == ("z", "x", "y")
    assert infer_roster("1-x-y").names == ("x", "y")


def test_parse_examples():
    roster = infer_roster("1-x-y")
    p = parse_poly("1-x-y", roster)
    assert p.terms == {(0, 0): 1, (1, 0): -1, (0, 1): -1}
    q = parse_poly("x^2*y - 3/2*x", roster)
    assert q.terms == {(2, 1): Fraction(1), (1, 0): Fraction(-3, 2)}


def test_parse_rejects_garbage():
    roster = infer_roster("x")
    for bad in ("1-x-(", "x**2", "x^-1", ""):
        with pytest.raises(PolyError):
            parse_poly(bad, roster)


@given(_random_poly())
@settings(max_examples=200, deadline=None)
def test_render_parse_round_trip(p):
    text = p.render()
    again = parse_poly(text, p.roster)
    assert again.terms == p.terms
    assert parse_poly(again.render(), p.roster).terms == p.terms


# -- arithmetic ------------------------------------------------------------


@given(_random_poly(), _random_poly())
@settings(max_examples=100, deadline=None)
def test_leibniz_rule(p, q):
    prod = p * q
    for j in range(2):
        lhs = prod.partial(j)
        rhs = p.partial(j) * q + p * q.partial(j)
        assert lhs.terms == rhs.terms


@given(_random_poly())
@settings(max_examples=100, deadline=None)
def test_eval_matches_term_sum(p):
    pt = [Fraction(1, 3), Fraction(-2, 7)]
    expected = sum(
        c * pt[0] ** e[0] * pt[1] ** e[1] for e, c in p.terms.items()
    )
    assert p.eval(pt) == expected


# -- real/imaginary split --------------------------------------------------


@given(
    _random_poly(),
    st.lists(
        st.fractions(min_value=-5, max_value=5, max_denominator=12),
        min_size=4,
        max_size=4,
    ),
)
@settings(max_examples=100, deadline=None)
def test_split_consistency(p, uv):
    pair = re_im_split(p, ("a1", "a2"), ("b1", "b2"))
    u1, u2, v1, v2 = uv
    # complex evaluation with exact rational real/imaginary parts
    re_acc, im_acc = Fraction(0), Fraction(0)
    for e, c in p.terms.items():
        zre, zim = Fraction(1), Fraction(0)
        for (ur, vi), k in zip(((u1, v1), (u2, v2)), e):
            for _ in range(k):
                zre, zim = zre * ur - zim * vi, zre * vi + zim * ur
        re_acc += c * zre
        im_acc += c * zim
    point = [u1, u2, v1, v2]
    assert pair.re.eval(point) == re_acc
    assert pair.im.eval(point) == im_acc


# -- square-free part ------------------------------------------------------


def _divides(a: SparsePoly, b: SparsePoly) -> bool:
    """Check a | b by exact division via sympy."""
    import sympy

    syms = sympy.symbols(list(b.roster.names))

    def to_sympy(p):
        return sympy.Add(
            *[
                sympy.Rational(c) * sympy.Mul(*[s**k for s, k in zip(syms, e)])
                for e, c in p.terms.items()
            ]
        )

    q, r = sympy.div(to_sympy(b), to_sympy(a), *syms)
    return r == 0


@pytest.mark.parametrize(
    "text",
    [
        "(1-x-y)^2",
        "(1-x)*(1-x)*(1-y)",
        "(1-x-y)*(2-x)^3",
        "1-x-y",
    ],
)
def test_square_free_part_divides_and_is_square_free(text):
    roster = infer_roster("x+y")
    p = parse_poly(text, roster)
    sf = square_free_part(p)
    assert _divides(sf, p)
    # gcd(sf, d sf/dx_j) is constant for every variable
    import sympy

    syms = sympy.symbols(["x", "y"])
    sf_s = sympy.Add(
        *[
            sympy.Rational(c) * sympy.Mul(*[s**k for s, k in zip(syms, e)])
            for e, c in sf.terms.items()
        ]
    )
    g = sf_s
    for s in syms:
        g = sympy.gcd(g, sympy.diff(sf_s, s))
    assert g.is_number


def test_direction_validation():
    Direction((1, 2, 3))
    with pytest.raises(PolyError):
        Direction((1, 0))
    with pytest.raises(PolyError):
        Direction((1, -2))
