"""Exact truncated power series expansion of G/H, the validation oracle.

Every asymptotic claim in this package can be checked against these exact
rational coefficients: F = G/H with H(0) != 0 satisfies the layered
recurrence f = (G - (H - H(0)) * f) / H(0), which determines the
coefficients degree by degree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Direction, PolyError, SparsePoly


@dataclass
class SeriesTable:
    """All coefficients of G/H with total degree <= bound."""

    coeffs: dict[tuple[int, ...], Fraction]
    bound: int
    dim: int

    def __getitem__(self, e: tuple[int, ...]) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))


def _exponents_of_degree(d: int, k: int):
    """All length-d tuples of nonnegative ints summing to k."""
    if d == 1:
        yield (k,)
        return
    for head in range(k + 1):
        for tail in _exponents_of_degree(d - 1, k - head):
            yield (head,) + tail


def series_coeffs(G: SparsePoly, H: SparsePoly, N: int) -> SeriesTable:
    """Exact rational coefficients of G/H through total degree N."""
    if H.constant_term() == 0:
        raise PolyError("denominator vanishes at the origin")
    if G.roster != H.roster:
        G = G.embed(H.roster)
    d = len(H.roster)
    h0 = H.constant_term()
    lower = [(e, c) for e, c in H.terms.items() if any(e)]
    coeffs: dict[tuple[int, ...], Fraction] = {}
    for k in range(N + 1):
        for e in _exponents_of_degree(d, k):
            acc = G.terms.get(e, Fraction(0))
            for he, hc in lower:
                prev = tuple(a - b for a, b in zip(e, he))
                if all(v >= 0 for v in prev):
                    acc -= hc * coeffs[prev]
            coeffs[e] = acc / h0
    return SeriesTable(coeffs, N, d)


def diagonal(
    G: SparsePoly, H: SparsePoly, r: Direction, N: int
) -> list[Fraction]:
    """f_{0r}, f_{1r}, ... with n * |r|_1 <= N, computed exactly.

    Works over the box [0, n_max * r] rather than the full degree simplex:
    the recurrence for an index only consults componentwise-smaller indices.
    """
    if H.constant_term() == 0:
        raise PolyError("denominator vanishes at the origin")
    if G.roster != H.roster:
        G = G.embed(H.roster)
    weight = sum(int(v) for v in r)
    n_max = N // weight if weight else 0
    top = [n_max * int(v) for v in r]
    h0 = H.constant_term()
    lower = [(e, c) for e, c in H.terms.items() if any(e)]
    coeffs: dict[tuple[int, ...], Fraction] = {}
    ranges = [range(t + 1) for t in top]
    # iterate in graded order so dependencies are already filled
    cells = sorted(itertools.product(*ranges), key=sum)
    for e in cells:
        acc = G.terms.get(e, Fraction(0))
        for he, hc in lower:
            prev = tuple(a - b for a, b in zip(e, he))
            if all(v >= 0 for v in prev):
                acc -= hc * coeffs.get(prev, Fraction(0))
        coeffs[e] = acc / h0
    return [
        coeffs[tuple(n * int(v) for v in r)] for n in range(n_max + 1)
    ]


@dataclass
class AsymptoticCheck:
    """Per-n relative errors of a predicted expansion against exact values."""

    errors: dict[int, float] = field(default_factory=dict)
    flagged: list[int] = field(default_factory=list)  # predicted(n) ~ 0

    @property
    def strictly_decreasing(self) -> bool:
        vals = [self.errors[n] for n in sorted(self.errors)]
        return all(b < a for a, b in zip(vals, vals[1:]))


def _predicted(terms, n: int) -> complex:
    return sum(
        complex(t.growth_base) ** (-n) * float(n) ** float(t.power) * complex(t.constant)
        for t in terms
    )


def check_asymptotics(seq, exp, n_values) -> AsymptoticCheck:
    """Relative errors |f_{nr} / predicted(n) - 1| at the given indices.

    Multi-term expansions are compared against the term sum; indices where
    the sum cancels to ~0 are flagged instead of divided by.
    """
    report = AsymptoticCheck()
    terms = exp.terms if hasattr(exp, "terms") else exp
    for n in n_values:
        if n >= len(seq):
            raise ValueError(f"series too short for n={n}")
        pred = _predicted(terms, n)
        scale = max(
            (abs(complex(t.growth_base) ** (-n) * complex(t.constant)) for t in terms),
            default=0.0,
        )
        if abs(pred) <= 1e-9 * scale:
            report.flagged.append(n)
            continue
        actual = complex(seq[n])
        report.errors[n] = abs(actual / pred - 1)
    return report
