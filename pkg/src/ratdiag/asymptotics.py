"""Leading diagonal asymptotics at certified minimal critical points.

The r-diagonal coefficients of G/H satisfy

    f_{nr} = w^{-nr} n^{(1-d)/2} (2 pi r_d)^{(1-d)/2} / sqrt(det(HH))
             * (-G(w)) / (w_d H_{z_d}(w)) * (1 + O(1/n))

per minimal critical point w, where HH is the phase Hessian below; when the
minimal torus carries several such points the contributions are summed.
Nonvanishing hypotheses (H_{z_d}, det, G) are checked with interval
arithmetic over the certified boxes, so failures are proofs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .certify import CertifiedSolution
from .intervals import ComplexBox, eval_poly_box
from .minimal import MinimalityResult
from .poly import Direction, SparsePoly


class AsymptoticsFailure(Exception):
    """A checkable hypothesis of the asymptotic formula fails."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(detail or reason)
        self.reason = reason  # hzd_zero | degenerate_hessian | numerator_vanishes


@dataclass
class PhaseHessian:
    entries: list[list[complex]]  # (d-1) x (d-1), symmetric
    det: complex
    det_box: ComplexBox | None = None  # certified enclosure of the determinant
    order: tuple[int, ...] = ()  # coordinate order used; last is distinguished


@dataclass
class AsymptoticTerm:
    point: tuple[complex, ...]
    growth_base: complex  # w^r; the sequence grows like (w^r)^{-n}
    power: Fraction  # (1 - d) / 2
    constant: complex


@dataclass
class AsymptoticExpansion:
    terms: list[AsymptoticTerm]
    formatted: str = ""
    warnings: list[str] = field(default_factory=list)


def _point_boxes(w, prec: int = 106) -> list[ComplexBox]:
    if isinstance(w, CertifiedSolution):
        return [b.with_prec(max(b.prec, prec)) for b in w.box]
    return [
        v if isinstance(v, ComplexBox) else ComplexBox.from_complex(complex(v), 0.0, prec)
        for v in w
    ]


def _box_det(m: list[list[ComplexBox]]) -> ComplexBox:
    """Determinant by cofactor expansion; fine for the small sizes here."""
    n = len(m)
    if n == 0:
        one = ComplexBox.from_complex(1.0, 0.0, 53)
        return one
    if n == 1:
        return m[0][0]
    acc = None
    for j in range(n):
        minor = [[m[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = m[0][j] * _box_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def _distinguished_order(H: SparsePoly, boxes, prec: int):
    """Coordinate order putting the largest |w_k H_{z_k}(w)| last.

    All the w_k H_{z_k} agree up to the direction's positive ratios at a
    critical point, so any coordinate with a provably nonzero value works;
    choosing the largest keeps the later divisions well conditioned.
    """
    d = len(boxes)
    vals = []
    for k in range(d):
        box = eval_poly_box(H.partial(k), boxes, prec) * boxes[k]
        vals.append(box)
    mags = [abs(complex(v.mid())) for v in vals]
    best = max(range(d), key=lambda k: mags[k])
    if vals[best].contains_zero():
        raise AsymptoticsFailure(
            "hzd_zero", "w_k H_{z_k}(w) contains zero for every coordinate"
        )
    order = [k for k in range(d) if k != best] + [best]
    return tuple(order), vals[best]


def phase_hessian(H: SparsePoly, r: Direction, w) -> PhaseHessian:
    """The (d-1) x (d-1) phase Hessian at a smooth critical point."""
    boxes = _point_boxes(w)
    prec = max(b.prec for b in boxes)
    d = len(boxes)
    order, denom = _distinguished_order(H, boxes, prec)
    if d == 1:
        return PhaseHessian([], 1.0, ComplexBox.from_complex(1.0, 0.0, prec), order)
    pd = order[-1]

    def U(i: int, j: int) -> ComplexBox:
        hij = H.partial(order[i]).partial(order[j])
        return boxes[order[i]] * boxes[order[j]] * eval_poly_box(hij, boxes, prec) / denom

    V = [Fraction(r[order[i]], r[pd]) for i in range(d - 1)]
    Udd = U(d - 1, d - 1)
    Ud = [U(i, d - 1) for i in range(d - 1)]
    m: list[list[ComplexBox]] = []
    for i in range(d - 1):
        row = []
        for j in range(d - 1):
            vi, vj = float(V[i]), float(V[j])
            if i == j:
                e = vi + vi * vi + U(i, i) - 2 * vi * Ud[i] + vi * vi * Udd
            else:
                e = vi * vj + U(i, j) - vj * Ud[i] - vi * Ud[j] + vi * vj * Udd
            row.append(e)
        m.append(row)
    det_box = _box_det(m)
    entries = [[complex(e.mid()) for e in row] for row in m]
    return PhaseHessian(entries, complex(det_box.mid()), det_box, order)


def leading_term(
    G: SparsePoly, H: SparsePoly, r: Direction, w
) -> AsymptoticTerm:
    """One point's contribution to the leading diagonal asymptotics."""
    boxes = _point_boxes(w)
    prec = max(b.prec for b in boxes)
    d = len(boxes)
    hess = phase_hessian(H, r, w)
    if hess.det_box is not None and hess.det_box.contains_zero():
        raise AsymptoticsFailure(
            "degenerate_hessian", "phase Hessian determinant contains zero"
        )
    g_box = eval_poly_box(G.embed(H.roster) if G.roster != H.roster else G, boxes, prec)
    if g_box.contains_zero():
        raise AsymptoticsFailure(
            "numerator_vanishes", "G(w) contains zero; higher-order terms needed"
        )
    pd = hess.order[-1]
    denom = eval_poly_box(H.partial(pd), boxes, prec) * boxes[pd]

    with mpmath.workprec(prec + 16):
        mids = [b.mid() for b in boxes]
        growth = mpmath.mpc(1)
        for v, rk in zip(mids, r):
            growth *= v ** int(rk)
        pref = mpmath.mpf(2 * mpmath.pi * int(r[pd])) ** (
            mpmath.mpf(1 - d) / 2
        )
        const = (
            pref
            / mpmath.sqrt(mpmath.mpc(hess.det))
            * (-g_box.mid())
            / denom.mid()
        )
        return AsymptoticTerm(
            tuple(complex(v) for v in mids),
            complex(growth),
            Fraction(1 - d, 2),
            complex(const),
        )


def expansion(
    G: SparsePoly,
    H: SparsePoly,
    r: Direction,
    result: MinimalityResult,
    oracle_check: bool = True,
) -> AsymptoticExpansion:
    """Summed leading terms over the minimal torus points.

    The square root in each constant uses the principal branch; since the
    theory does not pin the branch at non-real points, the summed prediction
    is compared against the exact series oracle at a small index and all
    constants are negated when they disagree by a factor of -1.
    """
    if result.failed:
        raise ValueError(f"minimality result has status {result.status}")
    terms = [leading_term(G, H, r, p) for p in result.minimal_points]
    warnings = list(result.warnings)
    if result.status == "warn_precision_cap":
        warnings.append("modulus grouping hit the precision cap")
    mods = [abs(t.growth_base) for t in terms]
    if mods and max(mods) - min(mods) > 1e-9 * max(mods):
        warnings.append("terms disagree on |w^r|; expansion is suspect")
    exp = AsymptoticExpansion(terms, warnings=warnings)
    if oracle_check and terms and any(
        abs(complex(v).imag) > 1e-12 for t in terms for v in t.point
    ):
        _resolve_sqrt_branch(G, H, r, exp)
    exp.formatted = format_asymptotics(exp)
    return exp


def _predict(terms: list[AsymptoticTerm], n: int) -> complex:
    return sum(t.growth_base ** (-n) * float(n) ** float(t.power) * t.constant for t in terms)


def _resolve_sqrt_branch(G, H, r, exp: AsymptoticExpansion):
    """Flip the constants' sign when the series oracle disagrees by ~ -1."""
    from .oracle import diagonal

    weight = sum(int(v) for v in r)
    n = max(4, min(12, 48 // max(weight, 1)))
    if n * weight > 60:
        exp.warnings.append(
            "sqrt branch unchecked: direction too heavy for the series oracle"
        )
        return
    seq = diagonal(G, H, r, n * weight)
    if len(seq) <= n:
        return
    scale = max(abs(t.growth_base ** (-n) * t.constant) for t in exp.terms)
    while n > 1 and abs(_predict(exp.terms, n)) < 1e-6 * scale:
        n -= 1  # cancellation at this index; step back
    pred = _predict(exp.terms, n)
    if abs(pred) == 0:
        return
    ratio = complex(seq[n]) / pred
    if ratio.real < 0:
        for t in exp.terms:
            t.constant = -t.constant
        exp.warnings.append(
            "sqrt branch resolved against the series oracle (constants negated)"
        )


# ---- rendering ----------------------------------------------------------


def _fmt_real(x: float, digits: int) -> str:
    s = f"%.{digits}g" % x
    if "e" not in s and "." not in s and s.lstrip("-").isdigit():
        s += ".0"
    return s


def _fmt_value(z: complex, digits: int) -> str:
    if z.imag == 0:
        return _fmt_real(z.real, digits)
    re = _fmt_real(z.real, digits)
    im = _fmt_real(abs(z.imag), digits)
    sign = "-" if z.imag < 0 else "+"
    return f"{re}{sign}{im}im"


def _fmt_power(p: Fraction) -> str:
    return str(p.numerator) if p.denominator == 1 else f"{p.numerator}/{p.denominator}"


def format_asymptotics(exp: AsymptoticExpansion, digits: int = 2) -> str:
    """Render terms as (base)^(-n)n^(power)(constant), joined by ' + '."""
    parts = []
    for t in exp.terms:
        parts.append(
            f"({_fmt_value(t.growth_base, digits)})^(-n)"
            f"n^({_fmt_power(t.power)})"
            f"({_fmt_value(t.constant, digits)})"
        )
    return " + ".join(parts)
