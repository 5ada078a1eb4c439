"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial is stored as a dict mapping exponent tuples to ``Fraction``
coefficients.  Zero coefficients are never stored, so equality of dicts is
equality of polynomials.  All arithmetic here is exact; floating point only
enters downstream (numeric solving / asymptotic evaluation).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Exponent = tuple[int, ...]

_NAME_RE = re.compile(r"[a-zA-Z][a-zA-Z0-9_]*")


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    """Syntax or name error while parsing polynomial text."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


@dataclass(frozen=True)
class VarRoster:
    """Ordered, distinct variable names; order fixes coordinate indices."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise PolyError(f"duplicate variable names in {self.names}")
        for n in self.names:
            if not _NAME_RE.fullmatch(n):
                raise PolyError(f"invalid variable name {n!r}")

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def __iter__(self):
        return iter(self.names)


@dataclass(frozen=True)
class Direction:
    """Diagonal direction: strictly positive integer vector."""

    r: tuple[int, ...]

    def __post_init__(self):
        if not self.r or any((not isinstance(k, int)) or k <= 0 for k in self.r):
            raise PolyError(f"direction entries must be positive integers: {self.r}")

    def __len__(self) -> int:
        return len(self.r)

    def __iter__(self):
        return iter(self.r)

    def __getitem__(self, i):
        return self.r[i]


def _grlex_key(e: Exponent):
    return (sum(e), tuple(-x for x in e))


class SparsePoly:
    """Immutable sparse polynomial with exact rational coefficients."""

    __slots__ = ("roster", "terms", "_hash")

    def __init__(self, roster: VarRoster, terms: Mapping[Exponent, Fraction]):
        d = len(roster)
        clean: dict[Exponent, Fraction] = {}
        for e, c in terms.items():
            if len(e) != d:
                raise PolyError(f"exponent {e} has wrong length for roster of size {d}")
            c = Fraction(c)
            if c != 0:
                clean[tuple(int(x) for x in e)] = c
        object.__setattr__(self, "roster", roster)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # immutability guard
        raise AttributeError("SparsePoly is immutable")

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, roster: VarRoster) -> "SparsePoly":
        return cls(roster, {})

    @classmethod
    def const(cls, roster: VarRoster, c) -> "SparsePoly":
        return cls(roster, {(0,) * len(roster): Fraction(c)})

    @classmethod
    def var(cls, roster: VarRoster, name: str) -> "SparsePoly":
        e = [0] * len(roster)
        e[roster.index(name)] = 1
        return cls(roster, {tuple(e): Fraction(1)})

    # ---- basic queries ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.roster), Fraction(0))

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def degree_in(self, j: int) -> int:
        return max((e[j] for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SparsePoly)
            and self.roster == other.roster
            and self.terms == other.terms
        )

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.roster, tuple(sorted(self.terms.items()))))
            object.__setattr__(self, "_hash", h)
        return h

    # ---- arithmetic ---------------------------------------------------

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.roster != self.roster:
                raise PolyError("roster mismatch")
            return other
        return SparsePoly.const(self.roster, other)

    def __add__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return SparsePoly(self.roster, out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.roster, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "SparsePoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "SparsePoly":
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return SparsePoly(self.roster, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            raise PolyError("negative exponent")
        result = SparsePoly.const(self.roster, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "SparsePoly":
        c = Fraction(c)
        return SparsePoly(self.roster, {e: c * v for e, v in self.terms.items()})

    # ---- evaluation / calculus ----------------------------------------

    def eval(self, point: Sequence):
        """Term-by-term evaluation; exact when all point entries are Fractions."""
        if len(point) != len(self.roster):
            raise PolyError(
                f"point of length {len(point)} for {len(self.roster)} variables"
            )
        total = None
        for e, c in self.terms.items():
            v = c if isinstance(c, Fraction) else Fraction(c)
            term = v
            for x, k in zip(point, e):
                if k:
                    term = term * x**k
            total = term if total is None else total + term
        if total is None:
            return Fraction(0)
        return total

    def partial(self, j: int) -> "SparsePoly":
        """Formal partial derivative w.r.t. coordinate j (0-based)."""
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[j] == 0:
                continue
            ne = list(e)
            ne[j] -= 1
            out[tuple(ne)] = c * e[j]
        return SparsePoly(self.roster, out)

    def gradient(self) -> list["SparsePoly"]:
        return [self.partial(j) for j in range(len(self.roster))]

    # ---- structural transforms ----------------------------------------

    def embed(self, big: VarRoster) -> "SparsePoly":
        """Reinterpret over a larger roster containing this one's names."""
        idx = [big.index(n) for n in self.roster.names]
        d = len(big)
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * d
            for k, v in zip(idx, e):
                ne[k] = v
            out[tuple(ne)] = c
        return SparsePoly(big, out)

    def compose(self, mapping: Mapping[str, "SparsePoly"]) -> "SparsePoly":
        """Substitute each variable by a polynomial over a common target roster."""
        targets = [mapping[n] for n in self.roster.names]
        roster = targets[0].roster
        result = SparsePoly.zero(roster)
        for e, c in self.terms.items():
            term = SparsePoly.const(roster, c)
            for p, k in zip(targets, e):
                if k:
                    term = term * p**k
            result = result + term
        return result

    # ---- rendering -----------------------------------------------------

    def render(self) -> str:
        """Canonical text form (graded lex, parseable by parse_poly)."""
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{n}^{k}" if k > 1 else n
                for n, k in zip(self.roster.names, e)
                if k
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"SparsePoly({self.render()!r})"


# ---- parsing ----------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<rat>\d+\s*/\s*\d+)|(?P<int>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)"
    r"|(?P<op>[-+*^()]))"
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        if m.lastgroup == "rat":
            p, q = m.group("rat").split("/")
            tokens.append(("num", Fraction(int(p), int(q)), m.start()))
        elif m.lastgroup == "int":
            tokens.append(("num", Fraction(int(m.group("int"))), m.start()))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start()))
        else:
            tokens.append(("op", m.group("op"), m.start()))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    """Recursive descent over the grammar: + - * ^, rationals, parentheses."""

    def __init__(self, tokens, roster: VarRoster):
        self.tokens = tokens
        self.i = 0
        self.roster = roster

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expr(self) -> SparsePoly:
        kind, val, pos = self.peek()
        negate = False
        if kind == "op" and val in "+-":
            self.take()
            negate = val == "-"
        node = self.term()
        if negate:
            node = -node
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                node = node - rhs if val == "-" else node + rhs
            else:
                return node

    def term(self) -> SparsePoly:
        node = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.take()
                node = node * self.factor()
            else:
                return node

    def factor(self) -> SparsePoly:
        node = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num" or val.denominator != 1 or val < 0:
                raise ParseError("exponent must be a non-negative integer", pos)
            node = node ** int(val)
        return node

    def atom(self) -> SparsePoly:
        kind, val, pos = self.take()
        if kind == "num":
            return SparsePoly.const(self.roster, val)
        if kind == "name":
            if val not in self.roster.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return SparsePoly.var(self.roster, val)
        if kind == "op" and val == "(":
            node = self.expr()
            kind, val, pos = self.take()
            if not (kind == "op" and val == ")"):
                raise ParseError("expected ')'", pos)
            return node
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, roster: VarRoster) -> SparsePoly:
    """Parse polynomial text into expanded canonical sparse form."""
    parser = _Parser(_tokenize(text), roster)
    node = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return node


def infer_roster(text: str) -> VarRoster:
    """Roster from variable names in first-appearance order."""
    seen: list[str] = []
    for kind, val, _ in _tokenize(text):
        if kind == "name" and val not in seen:
            seen.append(val)
    return VarRoster(tuple(seen))


@dataclass(frozen=True)
class RationalGF:
    """G/H with a power series expansion at the origin."""

    numer: SparsePoly
    denom: SparsePoly

    def __post_init__(self):
        if self.numer.roster != self.denom.roster:
            raise PolyError("numerator and denominator rosters differ")
        if self.denom.constant_term() == 0:
            raise PolyError("denominator must have nonzero constant term")

    @property
    def roster(self) -> VarRoster:
        return self.denom.roster


@dataclass(frozen=True)
class ReImPair:
    """Real and imaginary parts of p(u + iv) over a 2d real roster."""

    re: SparsePoly
    im: SparsePoly


def re_im_split(
    p: SparsePoly,
    re_names: Sequence[str] | None = None,
    im_names: Sequence[str] | None = None,
) -> ReImPair:
    """Split p(u+iv) into exact real and imaginary parts.

    Output roster is (re block, im block); defaults to re_/im_ prefixed names.
    """
    d = len(p.roster)
    if re_names is None:
        re_names = [f"re_{n}" for n in p.roster.names]
    if im_names is None:
        im_names = [f"im_{n}" for n in p.roster.names]
    roster = VarRoster(tuple(re_names) + tuple(im_names))
    u = [SparsePoly.var(roster, n) for n in re_names]
    v = [SparsePoly.var(roster, n) for n in im_names]
    re_total = SparsePoly.zero(roster)
    im_total = SparsePoly.zero(roster)
    for e, c in p.terms.items():
        # multiply out prod_j (u_j + i v_j)^{e_j} as a (re, im) pair
        tre = SparsePoly.const(roster, c)
        tim = SparsePoly.zero(roster)
        for j, k in enumerate(e):
            for _ in range(k):
                tre, tim = tre * u[j] - tim * v[j], tre * v[j] + tim * u[j]
        re_total = re_total + tre
        im_total = im_total + tim
    return ReImPair(re_total, im_total)


# ---- square-free part -------------------------------------------------


def _to_sympy(p: SparsePoly):
    import sympy

    syms = sympy.symbols(list(p.roster.names)) if len(p.roster) else []
    if isinstance(syms, sympy.Symbol):
        syms = [syms]
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, k in zip(syms, e):
            if k:
                term *= s**k
        expr += term
    return expr, syms


def _from_sympy(expr, syms, roster: VarRoster) -> SparsePoly:
    import sympy

    poly = sympy.Poly(expr, *syms) if syms else None
    terms: dict[Exponent, Fraction] = {}
    if poly is None:
        c = sympy.Rational(expr)
        terms[(0,) * len(roster)] = Fraction(int(c.p), int(c.q))
    else:
        for e, c in poly.terms():
            c = sympy.Rational(c)
            terms[tuple(int(x) for x in e)] = Fraction(int(c.p), int(c.q))
    return SparsePoly(roster, terms)


def square_free_part(p: SparsePoly) -> SparsePoly:
    """Product of distinct irreducible factors: p / gcd(p, partials).

    Returns p itself (unscaled) when p is already square-free; otherwise the
    quotient normalized to integer content 1 with positive leading
    (graded-lex) coefficient.
    """
    import sympy

    if p.is_zero():
        raise PolyError("square_free_part of zero polynomial")
    if p.is_constant():
        return p
    expr, syms = _to_sympy(p)
    g = expr
    gcd = sympy.Integer(0)
    for s in syms:
        gcd = sympy.gcd(gcd, sympy.diff(g, s))
    gcd = sympy.gcd(g, gcd)
    if gcd.is_number:
        return p
    quo = sympy.cancel(g / gcd)
    result = _from_sympy(sympy.expand(quo), syms, p.roster)
    # normalize: content 1, positive leading coefficient in graded lex
    lead = max(result.terms, key=_grlex_key)
    from math import gcd as igcd

    num = 0
    den = 1
    for c in result.terms.values():
        num = igcd(num, c.numerator)
        den = den * c.denominator // igcd(den, c.denominator)
    content = Fraction(num, den)
    if result.terms[lead] < 0:
        content = -content
    return result.scale(1 / content)
