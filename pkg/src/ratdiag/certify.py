"""Krawczyk certification and arbitrary-precision refinement of solutions.

Given a square polynomial system F and an approximate solution y, build a box
X around y and evaluate the Krawczyk operator

    K(X) = y - Y F(y) + (I - Y J(X)) (X - y)

with Y an approximate inverse of the Jacobian at y.  K(X) strictly inside X
certifies existence and uniqueness of a solution of F in X.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import mpmath

from .intervals import ComplexBox, IntervalError, RealInterval, eval_poly_box, eval_poly_real
from .poly import SparsePoly


class CertificationFailure(Exception):
    """Krawczyk test failed; reason is 'non_contracting' or 'singular_jacobian'."""

    def __init__(self, reason: str, detail: str = ""):
        super().__init__(f"{reason}{': ' + detail if detail else ''}")
        self.reason = reason


class PrecisionCapError(Exception):
    """Refinement would exceed the configured precision cap (warning-level)."""

    def __init__(self, best: "CertifiedSolution", cap: int):
        super().__init__(f"refinement hit the {cap}-bit precision cap")
        self.best = best
        self.cap = cap


@dataclass(frozen=True)
class CertifiedSolution:
    """Box enclosure of one system solution with a uniqueness certificate."""

    box: tuple[ComplexBox, ...]
    certified: bool
    precision_bits: int
    real: bool = False  # certified on the real-restricted system

    @property
    def approx(self) -> tuple[mpmath.mpc, ...]:
        return tuple(b.mid() for b in self.box)

    def width(self) -> float:
        return max(b.width() for b in self.box)

    def intersects(self, other: "CertifiedSolution") -> bool:
        return all(a.intersects(b) for a, b in zip(self.box, other.box))


def _jacobian(polys: Sequence[SparsePoly]) -> list[list[SparsePoly]]:
    return [[p.partial(j) for j in range(len(polys))] for p in polys]


def _mid_matrix_inverse(jac_mid, n: int, prec: int):
    """Approximate inverse of the midpoint Jacobian, or None if singular."""
    with mpmath.workprec(prec):
        M = mpmath.matrix(n, n)
        for i in range(n):
            for j in range(n):
                M[i, j] = jac_mid[i][j]
        try:
            return M**-1
        except (ZeroDivisionError, TypeError, ValueError):
            return None


def _krawczyk_core(polys, jac, point_boxes, y, prec, real: bool):
    """Shared Krawczyk operator evaluation for the real and complex cases.

    Returns the component boxes of K(X) together with the input boxes.
    """
    n = len(polys)
    if real:
        evaluate = eval_poly_real
        zero = RealInterval(0, 0, prec)

        def thin(v):
            return RealInterval(v, v, prec)

    else:
        evaluate = eval_poly_box
        zero = ComplexBox(RealInterval(0, 0, prec))

        def thin(v):
            v = mpmath.mpc(v)
            return ComplexBox(
                RealInterval(v.real, v.real, prec), RealInterval(v.imag, v.imag, prec)
            )

    y_thin = [thin(v) for v in y]
    f_y = [evaluate(p, y_thin, prec) for p in polys]
    jac_boxes = [[evaluate(jac[i][j], point_boxes, prec) for j in range(n)] for i in range(n)]
    jac_mid = [
        [
            (jac_boxes[i][j].mid() if real else jac_boxes[i][j].mid())
            for j in range(n)
        ]
        for i in range(n)
    ]
    Y = _mid_matrix_inverse(jac_mid, n, prec)
    if Y is None:
        raise CertificationFailure("singular_jacobian")
    Yiv = [[thin(Y[i, j]) for j in range(n)] for i in range(n)]

    # R = I - Y J(X)
    R = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = zero
            for k in range(n):
                acc = acc + Yiv[i][k] * jac_boxes[k][j]
            R[i][j] = (thin(1) if i == j else zero) - acc

    dx = [point_boxes[j] - y_thin[j] for j in range(n)]
    K = []
    for i in range(n):
        acc = zero
        for k in range(n):
            acc = acc + Yiv[i][k] * f_y[k]
        corr = zero
        for j in range(n):
            corr = corr + R[i][j] * dx[j]
        K.append(y_thin[i] - acc + corr)
    return K


def krawczyk_certify(
    polys: Sequence[SparsePoly],
    approx: Sequence[complex],
    radius: float,
    prec: int = 53,
    real: bool = False,
) -> CertifiedSolution:
    """Certify a unique solution of a square system near approx.

    With real=True the system is restricted to real points: boxes are real
    intervals around Re(approx), proving the enclosed solution is real.
    """
    n = len(polys)
    if len(approx) != n:
        raise ValueError("approx length must equal system size")
    if radius <= 0:
        raise ValueError("radius must be positive")
    jac = _jacobian(polys)
    with mpmath.workprec(prec + 16):
        if real:
            y = [mpmath.mpf(getattr(v, "real", v)) for v in approx]
            boxes = [RealInterval(v - radius, v + radius, prec) for v in y]
            K = _krawczyk_core(polys, jac, boxes, y, prec, real=True)
            ok = all(b.contains_interior(k) for b, k in zip(boxes, K))
            if not ok:
                raise CertificationFailure("non_contracting")
            out = tuple(ComplexBox(k, RealInterval(0, 0, prec)) for k in K)
            return CertifiedSolution(out, True, prec, real=True)
        y = [mpmath.mpc(v) for v in approx]
        boxes = [ComplexBox.from_mpc(v, radius, prec) for v in y]
        K = _krawczyk_core(polys, jac, boxes, y, prec, real=False)
        ok = all(b.contains_interior(k) for b, k in zip(boxes, K))
        if not ok:
            raise CertificationFailure("non_contracting")
        return CertifiedSolution(tuple(K), True, prec, real=False)


def certify_adaptive(
    polys: Sequence[SparsePoly],
    approx: Sequence[complex],
    real: bool = False,
    max_bits: int = 4096,
) -> CertifiedSolution:
    """Certify with adaptive radius/precision retries.

    Radius starts at 1e-6 relative to coordinate magnitude (floor 1e-8) and
    shrinks; precision doubles from 53 bits up to the cap.
    """
    scale = max((abs(complex(v)) for v in approx), default=1.0)
    base = max(1e-6 * max(scale, 1.0), 1e-8)
    prec = 53
    last: CertificationFailure | None = None
    while prec <= max(max_bits, 53):
        approx_p = _newton_polish(polys, approx, prec, real=real)
        for radius in (base, base * 1e-2, base * 1e2):
            try:
                return krawczyk_certify(polys, approx_p, radius, prec, real=real)
            except CertificationFailure as exc:
                last = exc
            except IntervalError:
                last = CertificationFailure("non_contracting", "interval blowup")
        prec *= 2
    raise last if last is not None else CertificationFailure("non_contracting")


def _newton_polish(polys, approx, prec: int, iters: int = 25, real: bool = False):
    """Floating Newton iteration at working precision (not certified)."""
    n = len(polys)
    jac = _jacobian(polys)
    with mpmath.workprec(prec):
        if real:
            x = mpmath.matrix([mpmath.mpf(getattr(v, "real", v)) for v in approx])
        else:
            x = mpmath.matrix([mpmath.mpc(v) for v in approx])
        for _ in range(iters):
            pt = [x[i] for i in range(n)]
            F = mpmath.matrix([p.eval(pt) for p in polys])
            J = mpmath.matrix(n, n)
            for i in range(n):
                for j in range(n):
                    J[i, j] = jac[i][j].eval(pt)
            try:
                dx = mpmath.lu_solve(J, F)
            except (ZeroDivisionError, TypeError, ValueError):
                break  # singular Jacobian at this iterate; stop polishing
            x = x - dx
            if mpmath.norm(dx, "inf") < mpmath.mpf(2) ** (-prec + 8) * (
                1 + mpmath.norm(x, "inf")
            ):
                break
        return [x[i] for i in range(n)]


def refine(
    sol: CertifiedSolution,
    polys: Sequence[SparsePoly],
    target_width: float,
    max_bits: int = 4096,
) -> CertifiedSolution:
    """Shrink a certified box to width <= target_width, raising precision.

    Raises PrecisionCapError (carrying the best enclosure) when the needed
    precision exceeds max_bits; callers treat this as a warning, not an abort.
    """
    if not sol.certified:
        raise ValueError("refine requires a certified solution")
    if sol.width() <= target_width:
        return sol
    import math

    needed = max(64, int(-math.log2(max(target_width, 1e-300))) + 32)
    prec = max(sol.precision_bits, 64)
    best = sol
    while True:
        prec = min(max(2 * prec, needed), max(max_bits, 53))
        approx = _newton_polish(polys, best.approx, prec, real=sol.real)
        radius = target_width / 8
        try:
            cand = krawczyk_certify(polys, approx, radius, prec, real=sol.real)
            # the refined box must be the same solution: boxes must intersect
            if cand.intersects(best) and cand.width() <= target_width:
                return cand
            if cand.intersects(best) and cand.width() < best.width():
                best = cand
        except (CertificationFailure, IntervalError):
            pass
        if prec >= max_bits:
            raise PrecisionCapError(best, max_bits)


def classify(sol: CertifiedSolution, query: str, index: int = 0):
    """Answer box-provable predicates with 'yes' / 'no' / 'unknown'."""
    if query == "is_real":
        if sol.real:
            return "yes"
        if any(
            not b.im.contains(0) for b in sol.box
        ):
            return "no"
        return "unknown"
    if query == "is_positive_real":
        if sol.real and all(b.re.strictly_positive() for b in sol.box):
            return "yes"
        if any(not b.im.contains(0) for b in sol.box) or any(
            b.re.strictly_negative() for b in sol.box
        ):
            return "no"
        return "unknown"
    if query == "coord_in_open_unit":
        b = sol.box[index]
        if not b.im.contains(0):
            return "no"
        if b.re.iv.a > 0 and b.re.iv.b < 1:
            return "yes"
        if b.re.iv.b < 0 or b.re.iv.a > 1:
            return "no"
        return "unknown"
    raise ValueError(f"unknown query {query!r}")
