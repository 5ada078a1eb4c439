"""Certified minimal critical points of rational generating functions.

Given the denominator H and a direction r, this module builds the critical
point system, the extended system used for positive-point minimality testing
(combinatorial case), and the real-split systems that witness minimality
violations in the general case.  The three entry points are min_crits_comb,
min_crits_general, and approx_crit_heuristic; each returns a MinimalityResult
whose points are Krawczyk-certified boxes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .certify import CertifiedSolution, PrecisionCapError, refine
from .intervals import RealInterval, eval_poly_box, mpf_to_fraction
from .poly import (
    Direction,
    PolyError,
    SparsePoly,
    VarRoster,
    re_im_split,
    square_free_part,
)
from .solver import SolveOptions, SolveReport, solution_in_torus, solve_system
from .systems import PolySystem

# grouping two moduli is asserted once their certified enclosures agree to
# this many bits; separating them needs no threshold (disjointness is proof)
MODULUS_AGREE_BITS = 212


class MinimalityFailure(RuntimeError):
    """A FAIL condition of the minimality algorithms."""

    def __init__(self, status: str, detail: str = ""):
        super().__init__(detail or status)
        self.status = status
        self.detail = detail


@dataclass(frozen=True)
class CriticalSystem:
    """H together with the direction-proportionality equations."""

    base: PolySystem


@dataclass(frozen=True)
class CombExtendedSystem:
    """Torus-scaling system for positive-point minimality, in (z, lam, t, mu).

    The (1-t)*mu - 1 equation removes the t = 1 component, which consists of
    the critical points themselves and is handled separately.
    """

    system: PolySystem
    z_count: int


@dataclass(frozen=True)
class GeneralSystems:
    """Real-split minimality witness systems.

    nu_system: variables (a, b, x, y, lamR, lamI, nu, t), 4d+4 equations.
    nu0_system: the nu = "vertical direction" variant without nu, squared by
    dropping the last torus-direction equation, 4d+3 equations.
    """

    nu_system: PolySystem
    nu0_system: PolySystem
    d: int


@dataclass
class PointVerdict:
    point: CertifiedSolution
    verdict: str  # minimal | rejected | not_positive | off_torus | candidate
    witness_t: tuple[float, float] | None = None


@dataclass
class MinimalityResult:
    minimal_points: list[CertifiedSolution]
    torus_moduli: list[RealInterval] | None
    status: str  # ok | fail_infinite | fail_no_candidate | fail_lambda_zero
    #             | fail_mixed_torus | warn_precision_cap
    diagnostics: list[PointVerdict] = field(default_factory=list)
    heuristic: bool = False
    warnings: list[str] = field(default_factory=list)
    reports: dict[str, SolveReport] = field(default_factory=dict)

    @property
    def failed(self) -> bool:
        return self.status.startswith("fail_")


# ---- system construction ----------------------------------------------


def _check_inputs(H: SparsePoly, r: Direction):
    if H.is_zero():
        raise PolyError("denominator is zero")
    if H.constant_term() == 0:
        raise PolyError("denominator vanishes at the origin")
    if len(r) != len(H.roster):
        raise PolyError(
            f"direction has {len(r)} entries for {len(H.roster)} variables"
        )


def build_critical_system(H: SparsePoly, r: Direction) -> CriticalSystem:
    """H = 0 together with r_k z_1 H_{z_1} - r_1 z_k H_{z_k} = 0, k = 2..d."""
    _check_inputs(H, r)
    roster = H.roster
    z = [SparsePoly.var(roster, n) for n in roster.names]
    first = z[0] * H.partial(0)
    polys = [H]
    for k in range(1, len(roster)):
        polys.append(first.scale(r[k]) - (z[k] * H.partial(k)).scale(r[0]))
    return CriticalSystem(PolySystem(tuple(polys), roster, tag="CP"))


def _fresh(base: str, taken) -> str:
    name = base
    while name in taken:
        name = "_" + name
    return name


def comb_extended_base(H: SparsePoly, r: Direction) -> PolySystem:
    """Torus-scaling system in (z, lam, t) without the t != 1 restriction."""
    _check_inputs(H, r)
    znames = H.roster.names
    lam = _fresh("lam", znames)
    t = _fresh("t", znames)
    big = VarRoster(znames + (lam, t))
    tv = SparsePoly.var(big, t)
    lamv = SparsePoly.var(big, lam)
    scaled = {n: tv * SparsePoly.var(big, n) for n in znames}
    polys = [H.embed(big), H.compose(scaled)]
    for j, n in enumerate(znames):
        zj = SparsePoly.var(big, n)
        polys.append(zj * H.partial(j).embed(big) - lamv.scale(r[j]))
    return PolySystem(tuple(polys), big, tag="COMB_EXT")


def build_comb_extended(H: SparsePoly, r: Direction) -> CombExtendedSystem:
    """comb_extended_base plus (1-t)*mu - 1 = 0 removing t = 1 solutions."""
    base = comb_extended_base(H, r)
    znames = H.roster.names
    mu = _fresh("mu", base.roster.names)
    big = VarRoster(base.roster.names + (mu,))
    tv = SparsePoly.var(big, base.roster.names[-1])
    muv = SparsePoly.var(big, mu)
    polys = [p.embed(big) for p in base.polys]
    polys.append((1 - tv) * muv - 1)
    return CombExtendedSystem(
        PolySystem(tuple(polys), big, tag="COMB_EXT"), len(znames)
    )


def build_general_systems(H: SparsePoly, r: Direction) -> GeneralSystems:
    """Real-split witness systems for the general minimality test."""
    _check_inputs(H, r)
    d = len(H.roster)
    an = [f"a{i+1}" for i in range(d)]
    bn = [f"b{i+1}" for i in range(d)]
    xn = [f"x{i+1}" for i in range(d)]
    yn = [f"y{i+1}" for i in range(d)]
    split_ab = re_im_split(H, an, bn)
    split_xy = re_im_split(H, xn, yn)

    def make(with_nu: bool) -> PolySystem:
        tail = ["lamR", "lamI"] + (["nu"] if with_nu else []) + ["t"]
        big = VarRoster(tuple(an + bn + xn + yn + tail))
        a = [SparsePoly.var(big, n) for n in an]
        b = [SparsePoly.var(big, n) for n in bn]
        x = [SparsePoly.var(big, n) for n in xn]
        y = [SparsePoly.var(big, n) for n in yn]
        lamR = SparsePoly.var(big, "lamR")
        lamI = SparsePoly.var(big, "lamI")
        tv = SparsePoly.var(big, "t")
        HRab = split_ab.re.embed(big)
        HIab = split_ab.im.embed(big)
        HRxy = split_xy.re.embed(big)
        HIxy = split_xy.im.embed(big)
        # partial index j is a_j / x_j, index d+j is b_j / y_j
        polys = [HRab, HIab]
        for j in range(d):
            polys.append(
                a[j] * split_ab.re.partial(j).embed(big)
                + b[j] * split_ab.re.partial(d + j).embed(big)
                - lamR.scale(r[j])
            )
        for j in range(d):
            polys.append(
                a[j] * split_ab.im.partial(j).embed(big)
                + b[j] * split_ab.im.partial(d + j).embed(big)
                - lamI.scale(r[j])
            )
        polys.extend([HRxy, HIxy])
        for j in range(d):
            polys.append(
                x[j] ** 2 + y[j] ** 2 - tv * (a[j] ** 2 + b[j] ** 2)
            )
        hrx = [split_xy.re.partial(j).embed(big) for j in range(d)]
        hry = [split_xy.re.partial(d + j).embed(big) for j in range(d)]
        if with_nu:
            nu = SparsePoly.var(big, "nu")
            for j in range(d):
                polys.append(
                    (y[j] - nu * x[j]) * hrx[j] - (x[j] + nu * y[j]) * hry[j]
                )
        else:
            # the vertical-direction variant; drop the last instance to
            # square the system (any fixed choice is valid)
            for j in range(d - 1):
                polys.append(-x[j] * hrx[j] - y[j] * hry[j])
        return PolySystem(tuple(polys), big, tag="GEN_NU" if with_nu else "GEN_NU0")

    return GeneralSystems(make(True), make(False), d)


# ---- critical points ---------------------------------------------------


def _critical_points(
    H: SparsePoly, r: Direction, opts: SolveOptions
) -> tuple[list[CertifiedSolution], SolveReport]:
    cp = build_critical_system(H, r)
    report = solve_system(cp.base, opts)
    if report.singular_endpoints:
        raise MinimalityFailure(
            "fail_infinite",
            f"{report.singular_endpoints} singular endpoint clusters suggest "
            "non-isolated critical points",
        )
    kept = []
    for sol in report.solutions:
        if not solution_in_torus(sol):
            try:
                sol = refine(sol, cp.base.polys, 1e-30, opts.max_refine_bits)
            except PrecisionCapError as exc:
                sol = exc.best
            if not solution_in_torus(sol):
                continue  # a coordinate provably or plausibly zero
        kept.append(sol)
    return kept, report


def critical_points(
    H: SparsePoly, r: Direction, opts: SolveOptions | None = None
) -> list[CertifiedSolution]:
    """Certified distinct solutions of the critical point system in the torus."""
    return _critical_points(H, r, opts or SolveOptions())[0]


def _lambda_nonzero(H, r, sol, polys, max_bits) -> bool:
    # lambda = z_1 H_{z_1}(z) / r_1; positive scaling by 1/r_1 cannot change
    # whether the enclosure straddles zero, so test z_1 H_{z_1} directly
    p = SparsePoly.var(H.roster, H.roster.names[0]) * H.partial(0)
    if not eval_poly_box(p, list(sol.box), 160).contains_zero():
        return True
    try:
        sol = refine(sol, polys, 1e-30, max_bits)
    except PrecisionCapError as exc:
        sol = exc.best
    return not eval_poly_box(p, list(sol.box), 160).contains_zero()


# ---- modulus grouping --------------------------------------------------


def _moduli(sol: CertifiedSolution, d: int) -> list[RealInterval]:
    return [abs(b) for b in sol.box[:d]]


def _group_detail(
    points: list[CertifiedSolution],
    polys,
    reference: CertifiedSolution,
    max_bits: int,
) -> tuple[list[CertifiedSolution], bool, list[RealInterval]]:
    """Keep points whose moduli match the reference's.

    Each comparison refines until the modulus intervals either separate
    (proving the point lies on a different torus) or agree to
    MODULUS_AGREE_BITS bits (taken as equality).  Hitting the refinement cap
    first leaves the point included and sets the warning flag.
    """
    d = len(reference.box)
    target = 2.0 ** -min(MODULUS_AGREE_BITS, max_bits)
    warned = False

    def sharpen(sol):
        nonlocal warned
        try:
            return refine(sol, polys, target, max_bits)
        except PrecisionCapError as exc:
            warned = True
            return exc.best

    ref = sharpen(reference)
    ref_mod = _moduli(ref, d)
    kept = []
    moduli = list(ref_mod)
    for p in points:
        mods = _moduli(p, d)
        if any(m.disjoint(rm) for m, rm in zip(mods, ref_mod)):
            continue
        q = sharpen(p)
        mods = _moduli(q, d)
        if any(m.disjoint(rm) for m, rm in zip(mods, ref_mod)):
            continue
        kept.append(q)
        moduli = [a.hull(b) for a, b in zip(moduli, mods)]
    return kept, warned, moduli


def group_by_modulus(
    points: list[CertifiedSolution],
    reference: CertifiedSolution,
    polys=None,
    max_bits: int = 4096,
) -> list[CertifiedSolution]:
    """All points provably-or-indistinguishably on the reference's torus.

    polys is the system the points solve; omitting it skips refinement and
    compares the boxes as given.
    """
    if polys is None:
        d = len(reference.box)
        ref_mod = _moduli(reference, d)
        return [
            p
            for p in points
            if not any(m.disjoint(rm) for m, rm in zip(_moduli(p, d), ref_mod))
        ]
    return _group_detail(points, polys, reference, max_bits)[0]


# ---- witness plumbing --------------------------------------------------


def _t_in_unit_interval(t_box: RealInterval) -> bool:
    return t_box.strictly_positive() and (1 - t_box).strictly_positive()


def _boxes_overlap(avals, bvals) -> bool:
    return all(x.intersects(y) for x, y in zip(avals, bvals))


def _real_witnesses(report: SolveReport, t_index: int):
    """Certified real solutions whose t coordinate lies strictly in (0, 1)."""
    out = []
    for sol in report.solutions:
        if not sol.real:
            continue
        t_box = sol.box[t_index].re
        if _t_in_unit_interval(t_box):
            out.append(sol)
    return out


def _is_positive_real(sol: CertifiedSolution) -> bool:
    return sol.real and all(b.re.strictly_positive() for b in sol.box)


# ---- Algorithm: combinatorial case ------------------------------------


def min_crits_comb(
    H: SparsePoly, r: Direction, opts: SolveOptions | None = None
) -> MinimalityResult:
    """Minimal critical points assuming the series is combinatorial.

    Candidates are the positive real critical points; each is rejected when
    the torus-scaling system has a certified real solution at the same point
    with scaling factor t strictly inside (0, 1).  Exactly one candidate must
    survive; the result is its full torus group among all critical points.
    """
    opts = opts or SolveOptions()
    H = square_free_part(H)
    try:
        crits, cp_report = _critical_points(H, r, opts)
    except MinimalityFailure as exc:
        return MinimalityResult([], None, exc.status, warnings=[exc.detail])
    cp_polys = build_critical_system(H, r).base.polys

    ext = build_comb_extended(H, r)
    ext_report = solve_system(ext.system, opts)
    if ext_report.singular_endpoints:
        return MinimalityResult(
            [], None, "fail_infinite",
            warnings=["torus-scaling system has singular endpoint clusters"],
            reports={"critical": cp_report, "extended": ext_report},
        )
    d = ext.z_count
    t_index = d + 1  # roster order is (z..., lam, t, mu)
    witnesses = _real_witnesses(ext_report, t_index)

    rejected: dict[int, tuple[float, float]] = {}
    survivors = []
    for sol in crits:
        if not _is_positive_real(sol):
            continue
        hit = None
        for w in witnesses:
            if _boxes_overlap([b.re for b in sol.box], [b.re for b in w.box[:d]]):
                hit = w
                break
        if hit is not None:
            tb = hit.box[t_index].re
            rejected[id(sol)] = (tb.lo, tb.hi)
        else:
            survivors.append(sol)
    reports = {"critical": cp_report, "extended": ext_report}

    def diagnose(group=()):
        out = []
        for sol in crits:
            if id(sol) in rejected:
                out.append(PointVerdict(sol, "rejected", rejected[id(sol)]))
            elif any(sol.intersects(g) for g in group):
                out.append(PointVerdict(sol, "minimal"))
            else:
                out.append(PointVerdict(sol, "off_torus"))
        return out

    if len(survivors) != 1:
        return MinimalityResult(
            [], None, "fail_no_candidate", diagnose(),
            warnings=[
                f"{len(survivors)} positive candidates survive the scaling "
                "test; need exactly 1"
            ],
            reports=reports,
        )
    zeta = survivors[0]
    if not _lambda_nonzero(H, r, zeta, cp_polys, opts.max_refine_bits):
        return MinimalityResult(
            [], None, "fail_lambda_zero", diagnose(), reports=reports
        )
    group, warned, moduli = _group_detail(
        crits, cp_polys, zeta, opts.max_refine_bits
    )
    status = "warn_precision_cap" if warned else "ok"
    return MinimalityResult(group, moduli, status, diagnose(group), reports=reports)


# ---- Algorithm: general case -------------------------------------------


def _general_candidates(
    crits: list[CertifiedSolution],
    witnesses_by_system: list[tuple[list[CertifiedSolution], int]],
    d: int,
    diagnostics: list[PointVerdict],
):
    """Candidates with no real witness at matching (a, b) and t in (0, 1)."""
    survivors = []
    for sol in crits:
        re_boxes = [b.re for b in sol.box]
        im_boxes = [b.im for b in sol.box]
        hit = None
        hit_t = None
        for witnesses, t_index in witnesses_by_system:
            for w in witnesses:
                a_part = [b.re for b in w.box[:d]]
                b_part = [b.re for b in w.box[d : 2 * d]]
                if _boxes_overlap(re_boxes, a_part) and _boxes_overlap(
                    im_boxes, b_part
                ):
                    hit = w
                    hit_t = w.box[t_index].re
                    break
            if hit is not None:
                break
        if hit is not None:
            diagnostics.append(
                PointVerdict(sol, "rejected", (hit_t.lo, hit_t.hi))
            )
        else:
            survivors.append(sol)
            diagnostics.append(PointVerdict(sol, "candidate"))
    return survivors


def _strictly_inside(w, sol, d) -> bool:
    """Certified: every coordinate modulus of w is below the one of sol.

    Guards the shrunken-torus rejections: the torus radii are built from the
    candidate's midpoint, so a witness with t barely below 1 could be the
    candidate itself; this comparison is against the certified boxes and
    cannot be fooled by that rounding.
    """
    for j in range(d):
        if not (abs(sol.box[j]) - abs(w.box[j])).strictly_positive():
            return False
    return True


def _real_slice_reject(H, survivors, diagnostics, reports, opts):
    """Extra sound rejections for surviving candidates.

    A certified real zero of H on the candidate torus shrunk by a factor
    t strictly inside (0, 1) lies strictly inside the candidate's polydisk
    and disproves minimality outright.  These witnesses are cheap to find in
    the original d variables and are easily lost in the large split-variable
    systems, so they get a dedicated pass.
    """
    remaining = []
    groups: dict[tuple, list[CertifiedSolution]] = {}
    for sol in survivors:
        groups.setdefault(_modulus_key(sol), []).append(sol)
    for i, (_, members) in enumerate(sorted(groups.items())):
        c = _exact_square_moduli(members[0])
        rep = solve_system(_real_slice_subsystem(H, c), opts)
        reports[f"slice{i}"] = rep
        witness = None
        witness_t = None
        for w in rep.solutions:
            if not w.real:
                continue
            sq = w.box[0].re.square()
            t_box = sq / RealInterval(c[0], prec=sq.prec)
            if _t_in_unit_interval(t_box):
                witness = w
                witness_t = (t_box.lo, t_box.hi)
                break
        d = len(H.roster)
        for sol in members:
            if witness is not None and _strictly_inside(witness, sol, d):
                for v in diagnostics:
                    if v.point is sol and v.verdict == "candidate":
                        v.verdict = "rejected"
                        v.witness_t = witness_t
            else:
                remaining.append(sol)
    return remaining


def _finish_general(
    H, r, crits, survivors, diagnostics, reports, opts, heuristic: bool
) -> MinimalityResult:
    cp_polys = build_critical_system(H, r).base.polys
    if not survivors:
        return MinimalityResult(
            [], None, "fail_no_candidate", diagnostics,
            heuristic=heuristic, reports=reports,
            warnings=["every critical point has a scaling witness"],
        )
    for sol in survivors:
        if not _lambda_nonzero(H, r, sol, cp_polys, opts.max_refine_bits):
            return MinimalityResult(
                [], None, "fail_lambda_zero", diagnostics,
                heuristic=heuristic, reports=reports,
            )
    group, warned, moduli = _group_detail(
        survivors, cp_polys, survivors[0], opts.max_refine_bits
    )
    if len(group) != len(survivors):
        return MinimalityResult(
            [], None, "fail_mixed_torus", diagnostics,
            heuristic=heuristic, reports=reports,
            warnings=["surviving candidates lie on provably different tori"],
        )
    for v in diagnostics:
        if v.verdict == "candidate":
            v.verdict = "minimal"
    status = "warn_precision_cap" if warned else "ok"
    return MinimalityResult(
        group, moduli, status, diagnostics, heuristic=heuristic, reports=reports
    )


def min_crits_general(
    H: SparsePoly, r: Direction, opts: SolveOptions | None = None
) -> MinimalityResult:
    """Minimal critical points without a combinatoriality assumption.

    Solves both real-split witness systems in full; a critical point a+ib is
    minimal iff neither system has a certified real solution with matching
    (a, b) and t strictly inside (0, 1).
    """
    opts = opts or SolveOptions()
    H = square_free_part(H)
    try:
        crits, cp_report = _critical_points(H, r, opts)
    except MinimalityFailure as exc:
        return MinimalityResult([], None, exc.status, warnings=[exc.detail])
    gen = build_general_systems(H, r)
    d = gen.d
    rep_nu = solve_system(gen.nu_system, opts)
    rep_nu0 = solve_system(gen.nu0_system, opts)
    reports = {"critical": cp_report, "nu": rep_nu, "nu0": rep_nu0}
    if rep_nu.singular_endpoints or rep_nu0.singular_endpoints:
        return MinimalityResult(
            [], None, "fail_infinite",
            warnings=["witness system has singular endpoint clusters"],
            reports=reports,
        )
    t_nu = 4 * d + 3  # (a,b,x,y,lamR,lamI,nu,t)
    t_nu0 = 4 * d + 2  # (a,b,x,y,lamR,lamI,t)
    witnesses = [
        (_real_witnesses(rep_nu, t_nu), t_nu),
        (_real_witnesses(rep_nu0, t_nu0), t_nu0),
    ]
    diagnostics: list[PointVerdict] = []
    survivors = _general_candidates(crits, witnesses, d, diagnostics)
    survivors = _real_slice_reject(H, survivors, diagnostics, reports, opts)
    return _finish_general(
        H, r, crits, survivors, diagnostics, reports, opts, heuristic=False
    )


# ---- approx-crit heuristic ----------------------------------------------


def _heuristic_subsystem(
    H: SparsePoly, c: list[Fraction], with_nu: bool
) -> tuple[PolySystem, int]:
    """Witness subsystem with the candidate moduli c_j = a_j^2 + b_j^2 fixed.

    The scaling variable t = (x_1^2 + y_1^2) / c_1 is eliminated, which keeps
    the system square while halving its degree product; the returned index is
    unused (-1) since t is recovered from the solution.
    """
    d = len(H.roster)
    xn = [f"x{i+1}" for i in range(d)]
    yn = [f"y{i+1}" for i in range(d)]
    split_xy = re_im_split(H, xn, yn)
    tail = ["nu"] if with_nu else []
    big = VarRoster(tuple(xn + yn + tail))
    x = [SparsePoly.var(big, n) for n in xn]
    y = [SparsePoly.var(big, n) for n in yn]
    polys = [split_xy.re.embed(big), split_xy.im.embed(big)]
    s1 = x[0] ** 2 + y[0] ** 2
    for j in range(1, d):
        polys.append((x[j] ** 2 + y[j] ** 2).scale(c[0]) - s1.scale(c[j]))
    hrx = [split_xy.re.partial(j).embed(big) for j in range(d)]
    hry = [split_xy.re.partial(d + j).embed(big) for j in range(d)]
    if with_nu:
        nu = SparsePoly.var(big, "nu")
        for j in range(d):
            polys.append((y[j] - nu * x[j]) * hrx[j] - (x[j] + nu * y[j]) * hry[j])
    else:
        for j in range(d - 1):
            polys.append(-x[j] * hrx[j] - y[j] * hry[j])
    return PolySystem(tuple(polys), big, tag="USER"), d


def _real_slice_subsystem(H: SparsePoly, c: list[Fraction]) -> PolySystem:
    """Real zeros of H on the scaled candidate torus, in the original variables.

    Any certified real solution z with t = z_1^2 / c_1 strictly inside (0, 1)
    is a zero of H with |z_j| = sqrt(t c_j) < sqrt(c_j), i.e. strictly inside
    the candidate's polydisk, and therefore rejects the candidate outright.
    Real witnesses are common in practice (they arise whenever the blocking
    zero set meets the real points of the shrunken torus), so this small
    square system is worth solving before the full split-variable ones.
    """
    roster = H.roster
    z = [SparsePoly.var(roster, n) for n in roster.names]
    polys = [H]
    for j in range(1, len(roster)):
        polys.append((z[j] ** 2).scale(c[0]) - (z[0] ** 2).scale(c[j]))
    return PolySystem(tuple(polys), roster, tag="USER")


def _modulus_key(sol: CertifiedSolution) -> tuple:
    return tuple(round(float(abs(b).mid()) ** 2, 9) for b in sol.box)


def _exact_square_moduli(sol: CertifiedSolution) -> list[Fraction]:
    out = []
    for b in sol.box:
        re = mpf_to_fraction(b.re.mid())
        im = mpf_to_fraction(b.im.mid())
        out.append(re * re + im * im)
    return out


def approx_crit_heuristic(
    H: SparsePoly, r: Direction, opts: SolveOptions | None = None
) -> MinimalityResult:
    """Heuristic minimality: witness subsystems per candidate modulus vector.

    Critical points are computed first; their coordinate moduli are then
    substituted as fixed parameters into the witness equations, so each
    candidate only needs a small solve.  Soundness of a rejection still rests
    on a certified witness, but minimality verdicts are heuristic because the
    parametrized systems can in principle miss witnesses (no full-rank check).
    """
    opts = opts or SolveOptions()
    H = square_free_part(H)
    try:
        crits, cp_report = _critical_points(H, r, opts)
    except MinimalityFailure as exc:
        return MinimalityResult(
            [], None, exc.status, heuristic=True, warnings=[exc.detail]
        )
    reports = {"critical": cp_report}
    # the witness subsystem depends on the candidate only through its
    # squared moduli, so candidates sharing them share one solve
    groups: dict[tuple, list[CertifiedSolution]] = {}
    for sol in crits:
        groups.setdefault(_modulus_key(sol), []).append(sol)

    d = len(H.roster)
    diagnostics: list[PointVerdict] = []
    survivors: list[CertifiedSolution] = []
    for i, (key, members) in enumerate(sorted(groups.items())):
        c = _exact_square_moduli(members[0])
        witness_t = None
        witness_mod_sq = None
        # cheapest first: real zeros on the shrunken torus, then the split
        # systems (nu-free before nu, which has a far larger degree product);
        # the first certified witness settles the whole group
        slice_rep = solve_system(_real_slice_subsystem(H, c), opts)
        reports[f"sub{i}_real"] = slice_rep
        for w in slice_rep.solutions:
            if not w.real:
                continue
            sq = w.box[0].re.square()
            t_box = sq / RealInterval(c[0], prec=sq.prec)
            if _t_in_unit_interval(t_box):
                witness_t = (t_box.lo, t_box.hi)
                witness_mod_sq = [abs(w.box[j]).square() for j in range(d)]
                break
        if witness_t is None:
            for with_nu in (False, True):
                sub, _ = _heuristic_subsystem(H, c, with_nu)
                rep = solve_system(sub, opts)
                reports[f"sub{i}_{'nu' if with_nu else 'nu0'}"] = rep
                for w in rep.solutions:
                    if not w.real:
                        continue
                    s1 = abs(w.box[0]).square() + abs(w.box[d]).square()
                    t_box = s1 / RealInterval(c[0], prec=s1.prec)
                    if _t_in_unit_interval(t_box):
                        witness_t = (t_box.lo, t_box.hi)
                        witness_mod_sq = [
                            abs(w.box[j]).square() + abs(w.box[d + j]).square()
                            for j in range(d)
                        ]
                        break
                if witness_t is not None:
                    break
        for sol in members:
            # a witness with t barely below 1 could be the candidate itself
            # (the torus radii come from its midpoint); only reject when the
            # certified moduli are strictly below the candidate's
            if witness_t is not None and all(
                (abs(sol.box[j]).square() - m).strictly_positive()
                for j, m in enumerate(witness_mod_sq)
            ):
                diagnostics.append(PointVerdict(sol, "rejected", witness_t))
            else:
                survivors.append(sol)
                diagnostics.append(PointVerdict(sol, "candidate"))
    return _finish_general(
        H, r, crits, survivors, diagnostics, reports, opts, heuristic=True
    )
