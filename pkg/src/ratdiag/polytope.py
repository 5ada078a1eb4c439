"""Newton polytopes and mixed volumes (Bernstein root-count bounds).

The mixed volume here is the lattice-normalized one: the coefficient of
a_1*...*a_n in Vol(a_1 Q_1 + ... + a_n Q_n), which bounds the number of
isolated torus solutions of a square system with those Newton polytopes.

Computation enumerates the mixed cells of a fine mixed subdivision induced
by a random integer lifting: each lower facet of the lifted Minkowski sum
whose per-polytope faces are all edges contributes |det| of its edge matrix.
A fresh lifting is drawn when a degeneracy is detected.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog
from scipy.spatial import ConvexHull, QhullError

from .poly import SparsePoly
from .systems import PolySystem


class MixedVolumeError(RuntimeError):
    """Resource budget exceeded or persistent lifting degeneracy."""


def newton_polytope(p: SparsePoly) -> list[tuple[int, ...]]:
    """Vertex set of the convex hull of the exponent vectors."""
    if p.is_zero():
        raise ValueError("newton_polytope of zero polynomial")
    points = sorted(p.terms.keys())
    return hull_vertices(points)


def hull_vertices(points: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Vertices of conv(points); robust to lower-dimensional point sets.

    A point is a vertex iff it is not a convex combination of the others,
    checked by a small LP feasibility problem.
    """
    points = sorted(set(points))
    if len(points) <= 2:
        return points
    arr = np.array(points, dtype=float)
    out = []
    for i, v in enumerate(points):
        others = np.delete(arr, i, axis=0)
        # feasibility: others^T lam = v, sum lam = 1, lam >= 0
        A_eq = np.vstack([others.T, np.ones(len(others))])
        b_eq = np.concatenate([arr[i], [1.0]])
        res = linprog(
            np.zeros(len(others)), A_eq=A_eq, b_eq=b_eq, bounds=(0, None),
            method="highs",
        )
        if not res.success:
            out.append(v)
    return out


def _lower_facet_normals(points: np.ndarray) -> list[np.ndarray]:
    """Distinct gamma with (gamma, 1) an inner normal of a lower facet.

    When the lifted point cloud is flat (e.g. a Minkowski sum of segments,
    whose lifted sums are always affinely dependent) Qhull cannot build a
    hull; the flat is then either vertical (the unlifted sum is lower
    dimensional, mixed volume 0) or a graph over the base space, in which
    case the whole cloud forms one cell whose gamma is the graph's slope.
    """
    dim = points.shape[1] - 1
    try:
        hull = ConvexHull(points)
    except QhullError:
        centered = points - points.mean(axis=0)
        if np.linalg.matrix_rank(centered[:, :dim], tol=1e-8) < dim:
            return []
        design = np.hstack([points[:, :dim], np.ones((len(points), 1))])
        fit, *_ = np.linalg.lstsq(design, points[:, dim], rcond=None)
        resid = design @ fit - points[:, dim]
        if np.max(np.abs(resid)) > 1e-6:
            raise MixedVolumeError("lifted point cloud is degenerate")
        return [-fit[:dim]]
    seen = {}
    for eq in hull.equations:
        normal = eq[:-1]
        last = normal[-1]
        if last >= -1e-9:
            continue  # outward normal points up or sideways: not a lower facet
        gamma = normal[:-1] / last
        key = tuple(np.round(gamma, 9))
        if key not in seen:
            seen[key] = gamma
    return list(seen.values())


class _Degenerate(Exception):
    pass


def _cells_for_lifting(
    supports: list[np.ndarray], lifts: list[np.ndarray], budget: int
) -> int:
    n = len(supports)
    dim = supports[0].shape[1]
    total = 1
    for A in supports:
        total *= len(A)
        if total > budget:
            raise MixedVolumeError(
                f"candidate point count exceeds budget {budget} (resource)"
            )
    # Minkowski sum of lifted supports
    sums = np.zeros((total, dim + 1))
    idx = 0
    for combo in itertools.product(*[range(len(A)) for A in supports]):
        pt = np.zeros(dim + 1)
        for i, k in enumerate(combo):
            pt[:dim] += supports[i][k]
            pt[dim] += lifts[i][k]
        sums[idx] = pt
        idx += 1
    volume = 0
    for gamma in _lower_facet_normals(sums):
        edges = []
        mixed = True
        dim_sum = 0
        for A, w in zip(supports, lifts):
            vals = A @ gamma + w
            lo = vals.min()
            face = np.nonzero(vals <= lo + 1e-6 * (1.0 + abs(lo)))[0]
            pts = A[face]
            # cell is fine iff each face is a simplex and dims sum to n
            frank = np.linalg.matrix_rank(pts - pts[0], tol=1e-8) if len(face) > 1 else 0
            if frank != len(face) - 1:
                raise _Degenerate()
            dim_sum += frank
            if len(face) != 2:
                mixed = False
            else:
                edges.append(pts[1] - pts[0])
        if dim_sum != n:
            raise _Degenerate()
        if not mixed:
            continue
        det = abs(np.linalg.det(np.array(edges, dtype=float)))
        cell_vol = int(round(det))
        if cell_vol == 0 or abs(det - cell_vol) > 1e-6:
            raise _Degenerate()
        volume += cell_vol
    return volume


def mixed_volume(
    polytopes: list[list[tuple[int, ...]]],
    rng: np.random.Generator | int | None = None,
    budget: int = 200_000,
    retries: int = 8,
) -> int:
    """Normalized mixed volume of n lattice polytopes in dimension n."""
    n = len(polytopes)
    if n == 0:
        raise ValueError("no polytopes given")
    dims = {len(pt) for p in polytopes for pt in p}
    if dims != {n}:
        raise ValueError(f"need {n} polytopes in dimension {n}, got dims {dims}")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    supports = [np.array(sorted(set(p)), dtype=float) for p in polytopes]
    last_exc: Exception | None = None
    for _ in range(retries):
        lifts = [
            rng.integers(0, 2**16, size=len(A)).astype(float) for A in supports
        ]
        try:
            return _cells_for_lifting(supports, lifts, budget)
        except _Degenerate as exc:
            last_exc = exc
            continue
    raise MixedVolumeError(f"persistent lifting degeneracy: {last_exc!r}")


def system_mixed_volume(
    sys: PolySystem, rng=None, budget: int = 200_000
) -> int:
    """Mixed volume of the system's Newton polytopes (Bernstein bound)."""
    supports = [list(p.terms.keys()) for p in sys.polys]
    return mixed_volume(supports, rng=rng, budget=budget)


def mixed_volume_inclusion_exclusion(
    polytopes: list[list[tuple[int, ...]]]
) -> int:
    """Independent mixed-volume computation via inclusion-exclusion of
    Minkowski-sum volumes; exponential in n, used as a cross-check."""
    n = len(polytopes)
    total = Fraction(0)
    import math

    for mask in range(1, 2**n):
        chosen = [polytopes[i] for i in range(n) if mask >> i & 1]
        pts = chosen[0]
        for nxt in chosen[1:]:
            pts = [tuple(a + b for a, b in zip(p, q)) for p in pts for q in nxt]
            pts = list(set(pts))
        sign = (-1) ** (n - len(chosen))
        try:
            vol = ConvexHull(np.array(pts, dtype=float)).volume
        except QhullError:
            vol = 0.0  # lower-dimensional sum
        total += sign * Fraction(vol).limit_denominator(math.factorial(n) * 64)
    return int(round(float(total)))
