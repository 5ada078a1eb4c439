"""Homotopy continuation solver for square polynomial systems.

Pipeline: total-degree start system with the gamma trick, predictor-corrector
path tracking (hot kernels in _kernels), Krawczyk certification of endpoints,
certified deduplication, and Bezout / mixed-volume completeness accounting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .backend import thread_count
from .certify import (
    CertificationFailure,
    CertifiedSolution,
    certify_adaptive,
    refine,
)
from .intervals import IntervalError
from .poly import PolyError, SparsePoly
from .systems import CompiledHomotopy, PolySystem, compile_homotopy


@dataclass(frozen=True)
class StartSystem:
    """Start system x_i^{d_i} - 1 with all root-of-unity tuples as solutions."""

    start_polys: tuple[SparsePoly, ...]
    start_solutions: np.ndarray  # complex128[P, n]
    gamma: complex


@dataclass(frozen=True)
class PathResult:
    endpoint: tuple[complex, ...]
    status: str  # success | diverged | truncated
    steps: int


@dataclass
class SolveOptions:
    seed: int = 0
    tol: float = 1e-10
    diverge_threshold: float = 1e14
    min_step: float = 1e-14
    max_steps: int = 3000
    init_ds: float = 0.05
    dedup_tol: float = 1e-8
    max_refine_bits: int = 4096
    want_mixed_volume: bool = False
    mixed_volume_budget: int = 200_000
    start_system: str = "total-degree"
    real_axis_tol: float = 1e-6  # endpoints this close to real trigger real re-certification


@dataclass
class SolveReport:
    solutions: list[CertifiedSolution]
    paths_tracked: int
    bezout: int
    mixed_volume: int | None
    mixed_volume_error: str | None
    complete: bool
    diverged: int = 0
    truncated: int = 0
    uncertified: int = 0
    singular_endpoints: int = 0
    junk_endpoints: int = 0  # endpoint clusters failing the residual filter
    salvaged: int = 0  # truncated endpoints recovered by target-system Newton

    @property
    def bound(self):
        return self.mixed_volume if self.mixed_volume is not None else self.bezout

    def torus_solutions(self) -> list[CertifiedSolution]:
        return [s for s in self.solutions if solution_in_torus(s)]


_STATUS_NAMES = {0: "success", 1: "diverged", 2: "truncated"}


def total_degree_start(sys: PolySystem, rng: np.random.Generator) -> StartSystem:
    """x_i^{d_i} - 1 start system; path count is the Bezout number."""
    n = sys.size
    degrees = sys.degrees()
    if any(d < 1 for d in degrees):
        raise PolyError("system has a constant polynomial")
    polys = []
    for i, d in enumerate(degrees):
        e_hi = [0] * n
        e_hi[i] = d
        polys.append(
            SparsePoly(sys.roster, {tuple(e_hi): 1, (0,) * n: -1})
        )
    gamma = complex(np.exp(2j * np.pi * rng.random()))
    roots = [
        np.exp(2j * np.pi * np.arange(d) / d) for d in degrees
    ]
    sols = np.array(
        [list(tup) for tup in itertools.product(*roots)], dtype=np.complex128
    )
    return StartSystem(tuple(polys), sols, gamma)


def _options_vector(opts: SolveOptions) -> np.ndarray:
    v = np.zeros(_kernels.N_OPTS)
    v[_kernels.OPT_DIVERGE] = opts.diverge_threshold
    v[_kernels.OPT_MIN_STEP] = opts.min_step
    v[_kernels.OPT_TOL] = opts.tol
    v[_kernels.OPT_MAX_STEPS] = opts.max_steps
    v[_kernels.OPT_INIT_DS] = opts.init_ds
    return v


def _track_all(
    compiled: CompiledHomotopy, starts: np.ndarray, opts: SolveOptions
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    P = starts.shape[0]
    endpoints = np.zeros_like(starts)
    status = np.zeros(P, dtype=np.int64)
    steps = np.zeros(P, dtype=np.int64)
    ov = _options_vector(opts)
    arrays = compiled.arrays()
    threads = thread_count()
    if threads <= 1 or P < 64:
        _kernels.track_block(*arrays, starts, ov, 0, P, endpoints, status, steps)
    else:
        from concurrent.futures import ThreadPoolExecutor

        bounds = np.linspace(0, P, threads + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futs = [
                pool.submit(
                    _kernels.track_block,
                    *arrays, starts, ov, int(lo), int(hi), endpoints, status, steps,
                )
                for lo, hi in zip(bounds[:-1], bounds[1:])
                if hi > lo
            ]
            for f in futs:
                f.result()
    return endpoints, status, steps


def track_path(sys: PolySystem, start: StartSystem, index: int, opts: SolveOptions | None = None) -> PathResult:
    """Track a single path of the gamma homotopy (1-s)*gamma*G + s*F."""
    if index >= start.start_solutions.shape[0]:
        raise IndexError("path index out of range")
    opts = opts or SolveOptions()
    compiled = compile_homotopy(sys, list(start.start_polys), start.gamma)
    starts = start.start_solutions[index : index + 1]
    endpoints, status, steps = _track_all(compiled, starts.copy(), opts)
    return PathResult(
        tuple(endpoints[0]), _STATUS_NAMES[int(status[0])], int(steps[0])
    )


def _relative_residual(polys, point) -> float:
    """Backward-error style residual: |f(x)| over the sum of |term| values.

    Paths that 'converge' far from any solution (typically toward solutions
    at infinity) produce values near 1; genuine solutions give ~1e-15.
    """
    worst = 0.0
    for p in polys:
        num = abs(complex(p.eval(point)))
        den = 1e-300
        for e, c in p.terms.items():
            t = abs(float(c))
            for v, k in zip(point, e):
                if k:
                    t *= abs(v) ** k
            den += t
        worst = max(worst, num / den)
    return worst


def _salvage_truncated(
    compiled: CompiledHomotopy, endpoints: np.ndarray, status: np.ndarray,
    opts: SolveOptions,
) -> np.ndarray:
    """Recover solutions from truncated paths by Newton on the target system.

    Truncated paths (step underflow or step budget) still carry their last
    point; when that point is within Newton range of a genuine solution the
    polish converges and downstream certification vets it, so no unsound
    endpoint can slip through.
    """
    trunc = status == _kernels.STATUS_TRUNCATED
    if not np.any(trunc):
        return endpoints[:0]
    cand = endpoints[trunc]
    finite = np.all(np.isfinite(cand), axis=1) & (
        np.max(np.abs(cand), axis=1) < opts.diverge_threshold
    )
    cand = np.ascontiguousarray(cand[finite])
    if not cand.shape[0]:
        return cand
    pstatus = np.full(cand.shape[0], _kernels.STATUS_TRUNCATED, dtype=np.int64)
    _kernels.polish_block(
        *compiled.arrays(), cand, opts.tol, 0, cand.shape[0], pstatus
    )
    return cand[pstatus == _kernels.STATUS_SUCCESS]


def _cluster_endpoints(
    endpoints: np.ndarray, tol: float, genuine: np.ndarray | None = None
) -> list[tuple[np.ndarray, bool]]:
    """Greedy clustering of nearby endpoints, deterministic in path order.

    Each cluster representative carries a flag saying whether any member came
    from a successfully tracked path (as opposed to a salvaged truncation).
    """
    if genuine is None:
        genuine = np.ones(endpoints.shape[0], dtype=bool)
    reps: list[np.ndarray] = []
    members: list[list[np.ndarray]] = []
    flags: list[bool] = []
    for row, g in zip(endpoints, genuine):
        placed = False
        for i, rep in enumerate(reps):
            if np.max(np.abs(row - rep)) < tol:
                members[i].append(row)
                flags[i] = flags[i] or bool(g)
                placed = True
                break
        if not placed:
            reps.append(row)
            members.append([row])
            flags.append(bool(g))
    return [
        (np.mean(np.stack(group), axis=0), flag)
        for group, flag in zip(members, flags)
    ]


def solution_in_torus(sol: CertifiedSolution) -> bool:
    """All coordinate boxes certifiably exclude zero."""
    return all(abs(b).strictly_positive() for b in sol.box)


def _same_solution(
    a: CertifiedSolution, b: CertifiedSolution, polys, max_bits: int
) -> bool:
    """Certified-box disjointness check, refining until separation or merge."""
    if not a.intersects(b):
        return False
    try:
        ra = refine(a, polys, 1e-13, max_bits)
        rb = refine(b, polys, 1e-13, max_bits)
    except Exception:
        return True  # cannot separate: be conservative, merge
    return ra.intersects(rb)


def solve_system(sys: PolySystem, opts: SolveOptions | None = None) -> SolveReport:
    """Track all paths, certify endpoints, deduplicate, report completeness."""
    opts = opts or SolveOptions()
    if opts.start_system != "total-degree":
        raise PolyError(
            f"unsupported start system {opts.start_system!r}; "
            "this build implements total-degree"
        )
    rng = np.random.default_rng(opts.seed)
    start = total_degree_start(sys, rng)
    compiled = compile_homotopy(sys, list(start.start_polys), start.gamma)
    endpoints, status, steps = _track_all(
        compiled, start.start_solutions.copy(), opts
    )
    ok = status == _kernels.STATUS_SUCCESS
    report = SolveReport(
        solutions=[],
        paths_tracked=int(status.shape[0]),
        bezout=sys.bezout_number(),
        mixed_volume=None,
        mixed_volume_error=None,
        complete=False,
        diverged=int(np.sum(status == _kernels.STATUS_DIVERGED)),
        truncated=int(np.sum(status == _kernels.STATUS_TRUNCATED)),
    )
    good = endpoints[ok]
    genuine = np.ones(good.shape[0], dtype=bool)
    salvaged = _salvage_truncated(compiled, endpoints, status, opts)
    if salvaged.shape[0]:
        report.salvaged = int(salvaged.shape[0])
        good = np.concatenate([good, salvaged], axis=0)
        genuine = np.concatenate(
            [genuine, np.zeros(salvaged.shape[0], dtype=bool)]
        )
    reps = _cluster_endpoints(good, opts.dedup_tol, genuine)
    certified: list[CertifiedSolution] = []
    first_pass_bits = min(256, opts.max_refine_bits)
    for rep, from_tracked_path in reps:
        approx = [complex(v) for v in rep]
        finite = all(np.isfinite(v) for v in rep)
        resid = _relative_residual(sys.polys, approx) if finite else np.inf
        if not (resid < 1e-7):
            report.junk_endpoints += 1
            continue
        near_real = max(abs(v.imag) for v in approx) < opts.real_axis_tol if approx else False
        sol = None
        if near_real:
            # coefficients are rational, so real-restricted certification is
            # well-posed; cap the precision spent before falling back
            try:
                sol = certify_adaptive(
                    sys.polys, approx, real=True,
                    max_bits=min(512, opts.max_refine_bits),
                )
            except (CertificationFailure, IntervalError):
                sol = None
        if sol is None:
            try:
                sol = certify_adaptive(
                    sys.polys, approx, real=False, max_bits=first_pass_bits
                )
            except CertificationFailure as exc:
                report.uncertified += 1
                # salvaged truncations that land near a degenerate locus are
                # expected casualties, not evidence of non-isolated solutions
                if from_tracked_path and exc.reason == "singular_jacobian":
                    report.singular_endpoints += 1
                continue
            except IntervalError:
                report.uncertified += 1
                continue
        certified.append(sol)
    # certified deduplication
    distinct: list[CertifiedSolution] = []
    for sol in certified:
        if any(
            _same_solution(sol, kept, sys.polys, opts.max_refine_bits)
            for kept in distinct
        ):
            continue
        distinct.append(sol)
    report.solutions = distinct
    if opts.want_mixed_volume:
        from .polytope import MixedVolumeError, system_mixed_volume

        try:
            report.mixed_volume = system_mixed_volume(
                sys, rng, budget=opts.mixed_volume_budget
            )
        except MixedVolumeError as exc:
            report.mixed_volume_error = str(exc)
    n_torus = sum(1 for s in distinct if solution_in_torus(s))
    if len(distinct) == report.bezout:
        report.complete = True
    if report.mixed_volume is not None and n_torus == report.mixed_volume:
        report.complete = True
    return report
