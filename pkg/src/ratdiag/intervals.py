"""Real and complex interval arithmetic with arbitrary-precision bounds.

Thin wrappers around mpmath's outward-rounded interval context.  Every
operation returns an interval that contains the exact image of its
arguments, at the precision the interval was created with.  Values are
immutable; precision changes create new intervals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath.ctx_iv import MPIntervalContext


class IntervalError(ArithmeticError):
    pass


_CONTEXTS: dict[int, MPIntervalContext] = {}


def _ctx(prec: int) -> MPIntervalContext:
    ctx = _CONTEXTS.get(prec)
    if ctx is None:
        ctx = MPIntervalContext()
        ctx.prec = prec
        _CONTEXTS[prec] = ctx
    return ctx


def mpf_to_fraction(x) -> Fraction | None:
    """Exact rational value of an mpf endpoint, or None for infinities."""
    x = mpmath.mpf(x)
    if not mpmath.isfinite(x):
        return None
    sign, man, exp, _ = x._mpf_
    val = Fraction(man) * (Fraction(2) ** exp)
    return -val if sign else val


def _to_iv(x, ctx):
    """Convert x (int, float, str, Fraction, mpf) to an enclosing iv.mpf."""
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / ctx.mpf(x.denominator)
    return ctx.convert(x)


class RealInterval:
    """Closed real interval [lo, hi] with outward-rounded arithmetic."""

    __slots__ = ("iv", "prec")

    def __init__(self, lo, hi=None, prec: int = 53):
        ctx = _ctx(prec)
        if hi is None:
            if isinstance(lo, ctx.mpf):
                v = lo
            else:
                v = _to_iv(lo, ctx)
        else:
            a = _to_iv(lo, ctx)
            b = _to_iv(hi, ctx)
            v = ctx.mpf([a.a, b.b])
        object.__setattr__(self, "iv", v)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *a):
        raise AttributeError("RealInterval is immutable")

    @classmethod
    def _wrap(cls, v, prec) -> "RealInterval":
        out = object.__new__(cls)
        object.__setattr__(out, "iv", v)
        object.__setattr__(out, "prec", prec)
        return out

    # -- bounds ---------------------------------------------------------

    @property
    def lo(self) -> float:
        return float(mpmath.mpf(self.iv.a))

    @property
    def hi(self) -> float:
        return float(mpmath.mpf(self.iv.b))

    def mid(self) -> mpmath.mpf:
        with mpmath.workprec(self.prec + 16):
            return (mpmath.mpf(self.iv.a) + mpmath.mpf(self.iv.b)) / 2

    def width(self) -> float:
        return float(mpmath.mpf(self.iv.delta))

    def contains(self, x) -> bool:
        if isinstance(x, Fraction):
            lo = mpf_to_fraction(self.iv.a)
            hi = mpf_to_fraction(self.iv.b)
            return (lo is None or lo <= x) and (hi is None or x <= hi)
        return self.iv.a <= x <= self.iv.b

    def contains_interval(self, other: "RealInterval") -> bool:
        return self.iv.a <= other.iv.a and other.iv.b <= self.iv.b

    def contains_interior(self, other: "RealInterval") -> bool:
        """other lies in the topological interior of self."""
        return self.iv.a < other.iv.a and other.iv.b < self.iv.b

    def disjoint(self, other: "RealInterval") -> bool:
        return self.iv.b < other.iv.a or other.iv.b < self.iv.a

    def intersects(self, other: "RealInterval") -> bool:
        return not self.disjoint(other)

    def strictly_positive(self) -> bool:
        return self.iv.a > 0

    def strictly_negative(self) -> bool:
        return self.iv.b < 0

    # -- arithmetic -------------------------------------------------------

    def _rhs(self, other):
        ctx = _ctx(self.prec)
        if isinstance(other, RealInterval):
            return ctx.mpf([other.iv.a, other.iv.b])
        return _to_iv(other, ctx)

    def __add__(self, other):
        return RealInterval._wrap(self.iv + self._rhs(other), self.prec)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval._wrap(-self.iv, self.prec)

    def __sub__(self, other):
        return RealInterval._wrap(self.iv - self._rhs(other), self.prec)

    def __rsub__(self, other):
        return RealInterval._wrap(self._rhs(other) - self.iv, self.prec)

    def __mul__(self, other):
        return RealInterval._wrap(self.iv * self._rhs(other), self.prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        rhs = self._rhs(other)
        if rhs.a <= 0 <= rhs.b:
            raise IntervalError("division by interval containing zero")
        return RealInterval._wrap(self.iv / rhs, self.prec)

    def __rtruediv__(self, other):
        if self.iv.a <= 0 <= self.iv.b:
            raise IntervalError("division by interval containing zero")
        return RealInterval._wrap(self._rhs(other) / self.iv, self.prec)

    def square(self) -> "RealInterval":
        return RealInterval._wrap(self.iv ** 2, self.prec)

    def sqrt(self) -> "RealInterval":
        if self.iv.a < 0:
            raise IntervalError("sqrt of interval with negative lower bound")
        ctx = _ctx(self.prec)
        return RealInterval._wrap(ctx.sqrt(self.iv), self.prec)

    def __abs__(self) -> "RealInterval":
        if self.iv.a >= 0:
            return self
        if self.iv.b <= 0:
            return -self
        ctx = _ctx(self.prec)
        hi = max(-self.iv.a, self.iv.b)
        return RealInterval._wrap(ctx.mpf([0, hi]), self.prec)

    def with_prec(self, prec: int) -> "RealInterval":
        ctx = _ctx(prec)
        return RealInterval._wrap(ctx.mpf([self.iv.a, self.iv.b]), prec)

    def hull(self, other: "RealInterval") -> "RealInterval":
        ctx = _ctx(self.prec)
        return RealInterval._wrap(
            ctx.mpf([min(self.iv.a, other.iv.a), max(self.iv.b, other.iv.b)]),
            self.prec,
        )

    def __repr__(self):
        return f"RealInterval([{mpmath.nstr(mpmath.mpf(self.iv.a), 17)}, {mpmath.nstr(mpmath.mpf(self.iv.b), 17)}])"


class ComplexBox:
    """Axis-aligned rectangle in the complex plane."""

    __slots__ = ("re", "im")

    def __init__(self, re: RealInterval, im: RealInterval | None = None):
        if im is None:
            im = RealInterval(0, 0, re.prec)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, *a):
        raise AttributeError("ComplexBox is immutable")

    @property
    def prec(self) -> int:
        return self.re.prec

    @classmethod
    def from_complex(cls, z: complex, radius: float = 0.0, prec: int = 53) -> "ComplexBox":
        z = complex(z)
        return cls(
            RealInterval(z.real - radius, z.real + radius, prec),
            RealInterval(z.imag - radius, z.imag + radius, prec),
        )

    @classmethod
    def from_mpc(cls, z, radius, prec: int) -> "ComplexBox":
        re = mpmath.mpf(getattr(z, "real", z))
        im = mpmath.mpf(getattr(z, "imag", 0))
        return cls(
            RealInterval(re - radius, re + radius, prec),
            RealInterval(im - radius, im + radius, prec),
        )

    def mid(self) -> mpmath.mpc:
        with mpmath.workprec(self.prec + 16):
            return mpmath.mpc(self.re.mid(), self.im.mid())

    def width(self) -> float:
        return max(self.re.width(), self.im.width())

    def contains_zero(self) -> bool:
        return self.re.contains(0) and self.im.contains(0)

    def contains_interior(self, other: "ComplexBox") -> bool:
        return self.re.contains_interior(other.re) and self.im.contains_interior(
            other.im
        )

    def disjoint(self, other: "ComplexBox") -> bool:
        return self.re.disjoint(other.re) or self.im.disjoint(other.im)

    def intersects(self, other: "ComplexBox") -> bool:
        return not self.disjoint(other)

    def _rhs(self, other) -> "ComplexBox":
        if isinstance(other, ComplexBox):
            return other
        if isinstance(other, RealInterval):
            return ComplexBox(other)
        if isinstance(other, complex):
            return ComplexBox.from_complex(other, 0.0, self.prec)
        return ComplexBox(RealInterval(other, None, self.prec))

    def __add__(self, other):
        o = self._rhs(other)
        return ComplexBox(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return ComplexBox(-self.re, -self.im)

    def __sub__(self, other):
        o = self._rhs(other)
        return ComplexBox(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return self._rhs(other) - self

    def __mul__(self, other):
        o = self._rhs(other)
        return ComplexBox(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._rhs(other)
        denom = o.re.square() + o.im.square()
        if denom.contains(0):
            raise IntervalError("division by complex box containing zero")
        num = self * o.conj()
        return ComplexBox(num.re / denom, num.im / denom)

    def __rtruediv__(self, other):
        return self._rhs(other) / self

    def conj(self) -> "ComplexBox":
        return ComplexBox(self.re, -self.im)

    def __abs__(self) -> RealInterval:
        return (self.re.square() + self.im.square()).sqrt()

    def with_prec(self, prec: int) -> "ComplexBox":
        return ComplexBox(self.re.with_prec(prec), self.im.with_prec(prec))

    def __repr__(self):
        return f"ComplexBox({self.re!r}, {self.im!r})"


def box_arith(op: str, *args):
    """Dispatch {add, sub, mul, div, sqrt, abs} over intervals and boxes."""
    a = args[0]
    if op == "add":
        return a + args[1]
    if op == "sub":
        return a - args[1]
    if op == "mul":
        return a * args[1]
    if op == "div":
        return a / args[1]
    if op == "sqrt":
        if isinstance(a, ComplexBox):
            raise IntervalError("sqrt is only defined for RealInterval")
        return a.sqrt()
    if op == "abs":
        return abs(a)
    raise ValueError(f"unknown operation {op!r}")


def eval_poly_box(poly, point: Sequence[ComplexBox], prec: int) -> ComplexBox:
    """Enclose the value of an exact-rational SparsePoly at a box vector."""
    total = ComplexBox(RealInterval(0, 0, prec))
    for e, c in poly.terms.items():
        term = ComplexBox(RealInterval(c, None, prec))
        for x, k in zip(point, e):
            for _ in range(k):
                term = term * x.with_prec(prec)
        total = total + term
    return total


def eval_poly_real(poly, point: Sequence[RealInterval], prec: int) -> RealInterval:
    """Enclose the value of an exact-rational SparsePoly at a real box vector."""
    total = RealInterval(0, 0, prec)
    for e, c in poly.terms.items():
        term = RealInterval(c, None, prec)
        for x, k in zip(point, e):
            if k == 1:
                term = term * x.with_prec(prec)
            elif k:
                term = term * _pow_real(x.with_prec(prec), k)
        total = total + term
    return total


def _pow_real(x: RealInterval, k: int) -> RealInterval:
    # even powers via square() to avoid the sign-blind product overestimate
    result = None
    base = x
    while k:
        if k & 1:
            result = base if result is None else result * base
        k >>= 1
        if k:
            base = base.square()
    return result
