"""Newton polytopes and mixed volumes, checked against inclusion-exclusion."""

import random

import numpy as np
import pytest

from ratdiag.poly import Direction, infer_roster, parse_poly
from ratdiag.polytope import (
    hull_vertices,
    mixed_volume,
    mixed_volume_inclusion_exclusion,
    newton_polytope,
    system_mixed_volume,
)
from ratdiag.minimal import comb_extended_base


def test_newton_polytope_vertices():
    roster = infer_roster("x+y")
    p = parse_poly("1-x-y", roster)
    assert set(map(tuple, newton_polytope(p))) == {(0, 0), (1, 0), (0, 1)}
    q = parse_poly("1+x^2*y+x*y^2", roster)
    assert set(map(tuple, newton_polytope(q))) == {(0, 0), (2, 1), (1, 2)}


def test_hull_vertices_drops_interior_and_colinear():
    pts = [(0, 0), (2, 0), (0, 2), (1, 1), (1, 0)]  # (1,1) on edge, (1,0) interior edge pt
    out = set(map(tuple, hull_vertices(pts)))
    assert out == {(0, 0), (2, 0), (0, 2)}
    seg = [(1,), (3,), (2,)]
    assert set(map(tuple, hull_vertices(seg))) == {(1,), (3,)}


def test_mixed_volume_known_cases():
    rng = np.random.default_rng(0)
    sq = [(0, 0), (1, 0), (0, 1), (1, 1)]
    tri = [(0, 0), (1, 0), (0, 1)]
    assert mixed_volume([sq, sq], rng) == 2
    assert mixed_volume([sq, tri], rng) == 2
    assert mixed_volume([tri, tri], rng) == 1
    # perpendicular segments: unit area parallelogram
    assert mixed_volume([[(0, 0), (1, 0)], [(0, 0), (0, 1)]], rng) == 1
    # parallel segments: degenerate, volume 0
    assert mixed_volume([[(0, 0), (1, 1)], [(0, 0), (2, 2)]], rng) == 0
    cube = [(i, j, k) for i in (0, 1) for j in (0, 1) for k in (0, 1)]
    assert mixed_volume([cube, cube, cube], rng) == 6


def test_mixed_volume_matches_inclusion_exclusion_fuzz():
    rng_py = random.Random(5)
    rng = np.random.default_rng(17)
    for trial in range(20):
        polys = []
        for _ in range(2):
            pts = {(0, 0)}
            while len(pts) < rng_py.randint(2, 5):
                pts.add((rng_py.randint(0, 3), rng_py.randint(0, 3)))
            polys.append(sorted(pts))
        got = mixed_volume(polys, rng)
        want = mixed_volume_inclusion_exclusion(polys)
        assert got == want, (trial, polys, got, want)


@pytest.mark.parametrize(
    "text,expected",
    [("1-x-y", 1), ("1-x*y-x*y^2-2*x^2*y", 9), ("1-x-y^2-w^3-z^4", 96)],
)
def test_torus_scaling_system_mixed_volumes(text, expected):
    roster = infer_roster(text)
    H = parse_poly(text, roster)
    sysq = comb_extended_base(H, Direction((1,) * len(roster)))
    rng = np.random.default_rng(0)
    assert system_mixed_volume(sysq, rng) == expected
