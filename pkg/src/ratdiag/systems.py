"""Square polynomial systems and their numeric (array) compilation.

The tracking kernels work on a flat term representation of the homotopy

    h_i(x, s) = sum_t coef_t * x^expo_t * s^sp_t * (1-s)^omp_t

with per-equation ranges.  Jacobian term lists are differentiated exactly
before conversion to complex128.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .poly import PolyError, SparsePoly, VarRoster

SYSTEM_TAGS = ("CP", "COMB_EXT", "GEN_NU", "GEN_NU0", "USER")


@dataclass(frozen=True)
class PolySystem:
    """Square system of polynomials over a shared roster."""

    polys: tuple[SparsePoly, ...]
    roster: VarRoster
    tag: str = "USER"

    def __post_init__(self):
        if len(self.polys) != len(self.roster):
            raise PolyError(
                f"system is not square: {len(self.polys)} equations, "
                f"{len(self.roster)} variables"
            )
        if self.tag not in SYSTEM_TAGS:
            raise PolyError(f"unknown system tag {self.tag!r}")
        for p in self.polys:
            if p.roster != self.roster:
                raise PolyError("system polynomial has mismatched roster")
            if p.is_zero():
                raise PolyError("zero polynomial in system")

    @property
    def size(self) -> int:
        return len(self.polys)

    def degrees(self) -> tuple[int, ...]:
        return tuple(p.total_degree() for p in self.polys)

    def bezout_number(self) -> int:
        out = 1
        for d in self.degrees():
            out *= d
        return out

    def jacobian(self) -> list[list[SparsePoly]]:
        return [p.gradient() for p in self.polys]

    def residual(self, point) -> float:
        return max(abs(complex(p.eval(list(point)))) for p in self.polys)


@dataclass
class TermBlock:
    """Flat term arrays for a list of 'polynomials times s-monomials'."""

    coef: np.ndarray  # complex128[NT]
    expo: np.ndarray  # int64[NT, n]
    sp: np.ndarray  # int64[NT]   power of s
    omp: np.ndarray  # int64[NT]  power of (1 - s)
    off: np.ndarray  # int64[m+1] slice bounds per entry


def _poly_terms(p: SparsePoly, s_pow: int, omp_pow: int, gamma: complex):
    rows = []
    for e, c in p.terms.items():
        rows.append((complex(c) * gamma, e, s_pow, omp_pow))
    return rows


def build_term_block(entries: list[list[tuple[complex, tuple, int, int]]], n: int) -> TermBlock:
    total = sum(len(rows) for rows in entries)
    coef = np.zeros(total, dtype=np.complex128)
    expo = np.zeros((total, n), dtype=np.int64)
    sp = np.zeros(total, dtype=np.int64)
    omp = np.zeros(total, dtype=np.int64)
    off = np.zeros(len(entries) + 1, dtype=np.int64)
    k = 0
    for i, rows in enumerate(entries):
        for c, e, a, b in rows:
            coef[k] = c
            expo[k, :] = e
            sp[k] = a
            omp[k] = b
            k += 1
        off[i + 1] = k
    return TermBlock(coef, expo, sp, omp, off)


@dataclass
class CompiledHomotopy:
    """Numeric homotopy h(x, s) plus its x-Jacobian in flat-array form."""

    n: int
    h: TermBlock
    jac: TermBlock  # row-major (i, k): d h_i / d x_k

    def arrays(self):
        return (
            self.h.coef,
            self.h.expo,
            self.h.sp,
            self.h.omp,
            self.h.off,
            self.jac.coef,
            self.jac.expo,
            self.jac.sp,
            self.jac.omp,
            self.jac.off,
        )


def compile_homotopy(
    target: PolySystem, start_polys: list[SparsePoly], gamma: complex
) -> CompiledHomotopy:
    """Compile h(x,s) = gamma*(1-s)*G(x) + s*F(x) and its Jacobian."""
    n = target.size
    h_entries = []
    for f, g in zip(target.polys, start_polys):
        rows = _poly_terms(f, 1, 0, 1.0) + _poly_terms(g, 0, 1, gamma)
        h_entries.append(rows)
    jac_entries = []
    for f, g in zip(target.polys, start_polys):
        for k in range(n):
            rows = _poly_terms(f.partial(k), 1, 0, 1.0) + _poly_terms(
                g.partial(k), 0, 1, gamma
            )
            jac_entries.append(rows)
    return CompiledHomotopy(n, build_term_block(h_entries, n), build_term_block(jac_entries, n))
