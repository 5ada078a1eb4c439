"""Homotopy solver: oracle comparisons, soundness, symmetry, determinism."""

import random
from fractions import Fraction

import numpy as np
import pytest

from ratdiag.intervals import eval_poly_box
from ratdiag.poly import SparsePoly, infer_roster, parse_poly
from ratdiag.solver import (
    SolveOptions,
    solve_system,
    total_degree_start,
    track_path,
)
from ratdiag.systems import PolySystem


def _system(*texts):
    roster = infer_roster("+".join(sorted({c for t in texts for c in t if c.isalpha()})))
    return PolySystem(tuple(parse_poly(t, roster) for t in texts), roster, tag="USER")


def _uni(text):
    roster = infer_roster("x")
    return PolySystem((parse_poly(text, roster),), roster, tag="USER")


# -- track_path ------------------------------------------------------------


def test_track_single_paths():
    sysq = _uni("x^2-2")
    start = total_degree_start(sysq, np.random.default_rng(0))
    ends = set()
    for i in range(2):
        res = track_path(sysq, start, i)
        assert res.status == "success"
        ends.add(round(res.endpoint[0].real, 6))
    assert ends == {1.414214, -1.414214}


def test_track_linear():
    res = track_path(_uni("x-5"), total_degree_start(_uni("x-5"), np.random.default_rng(0)), 0)
    assert res.status == "success"
    assert abs(res.endpoint[0] - 5) < 1e-8


def test_track_pure_imaginary_roots():
    sysq = _uni("x^2+1")
    start = total_degree_start(sysq, np.random.default_rng(0))
    res = track_path(sysq, start, 0)
    assert res.status == "success"
    assert abs(abs(res.endpoint[0].imag) - 1) < 1e-8
    assert abs(res.endpoint[0].real) < 1e-8


# -- univariate oracle -------------------------------------------------------


def _bisection_real_roots(coeffs, lo=-100.0, hi=100.0, pieces=4000):
    """Brute-force real-root isolation by sign changes + bisection."""

    def f(x):
        acc = 0.0
        for c in reversed(coeffs):  # coeffs[k] multiplies x^k
            acc = acc * x + c
        return acc

    roots = []
    xs = [lo + (hi - lo) * i / pieces for i in range(pieces + 1)]
    for a, b in zip(xs, xs[1:]):
        fa, fb = f(a), f(b)
        if fa == 0.0:
            roots.append(a)
            continue
        if fa * fb < 0:
            for _ in range(200):
                m = 0.5 * (a + b)
                fm = f(m)
                if fa * fm <= 0:
                    b = m
                else:
                    a, fa = m, fm
            roots.append(0.5 * (a + b))
    return roots


@pytest.mark.parametrize("seed", [1, 2, 3, 4])
def test_univariate_against_bisection_oracle(seed):
    rng = random.Random(seed)
    deg = rng.randint(3, 6)
    coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
    roster = infer_roster("x")
    poly = SparsePoly(
        roster, {(k,): Fraction(c) for k, c in enumerate(coeffs) if c}
    )
    sysq = PolySystem((poly,), roster, tag="USER")
    report = solve_system(sysq, SolveOptions(seed=seed))
    got_real = sorted(
        complex(s.approx[0]).real for s in report.solutions if s.real
    )
    want_real = sorted(_bisection_real_roots([float(c) for c in coeffs]))
    assert len(got_real) == len(want_real)
    for g, w in zip(got_real, want_real):
        assert abs(g - w) < 1e-6
    # non-real roots come in conjugate pairs and the total count is the degree
    assert len(report.solutions) == deg
    assert (len(report.solutions) - len(got_real)) % 2 == 0


# -- report invariants -------------------------------------------------------


def test_residual_soundness_and_count_bound():
    sysq = _system("x^2+y^2-4", "x*y-1")
    report = solve_system(sysq, SolveOptions())
    assert report.solutions
    assert len(report.solutions) <= report.bezout
    for sol in report.solutions:
        for p in sysq.polys:
            box = eval_poly_box(p, list(sol.box), sol.precision_bits)
            assert box.contains_zero()


def test_conjugate_symmetry():
    sysq = _uni("x^4+x+3")  # no real roots, two conjugate pairs
    report = solve_system(sysq, SolveOptions())
    assert len(report.solutions) == 4
    pts = [complex(s.approx[0]) for s in report.solutions]
    for z in pts:
        assert any(abs(w - z.conjugate()) < 1e-8 for w in pts)


def test_determinism_same_seed():
    sysq = _system("x^2+y^2-4", "x*y-1")
    a = solve_system(sysq, SolveOptions(seed=11))
    b = solve_system(sysq, SolveOptions(seed=11))
    key = lambda t: (t[0].real, t[0].imag, t[1].real, t[1].imag)
    pa = sorted(((complex(s.approx[0]), complex(s.approx[1])) for s in a.solutions), key=key)
    pb = sorted(((complex(s.approx[0]), complex(s.approx[1])) for s in b.solutions), key=key)
    assert len(pa) == len(pb)
    for u, v in zip(pa, pb):
        assert abs(u[0] - v[0]) < 1e-12 and abs(u[1] - v[1]) < 1e-12


def test_completeness_flag_with_mixed_volume():
    roster = infer_roster("x+y")
    sysq = PolySystem(
        (parse_poly("1-x-y", roster), parse_poly("x-y", roster)), roster, tag="USER"
    )
    report = solve_system(sysq, SolveOptions(want_mixed_volume=True))
    assert report.mixed_volume == 1
    assert report.complete


def test_salvage_recovers_truncated_paths():
    # tight step budget forces truncations; salvage still finds all roots
    sysq = _uni("x^5-1")
    opts = SolveOptions(max_steps=6, init_ds=0.01)
    report = solve_system(sysq, opts)
    assert report.truncated > 0
    assert len(report.solutions) == 5
