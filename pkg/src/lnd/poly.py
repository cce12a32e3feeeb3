"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` is a map from exponent tuples to nonzero
:class:`fractions.Fraction` coefficients over a fixed tuple of generator
names.  Values are never mutated after construction.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd as igcd
from math import lcm
from operator import add
from typing import Iterable, Mapping

from .errors import NotDivisibleError, ParseError, RingMismatchError
from .orders import DEGREVLEX, MonomialOrder

MAX_EXPONENT = 2**31 - 1
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def _integral(terms):
    """(list of (monomial, integer numerator), common denominator)."""
    den = lcm(*(c.denominator for c in terms.values()))
    return [(m, c.numerator * (den // c.denominator)) for m, c in terms.items()], den


def _check_exponent(e):
    if e > MAX_EXPONENT:
        raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")


class Polynomial:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens, terms: Mapping[tuple, object] | None = None):
        self.gens = tuple(gens)
        n = len(self.gens)
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c:
                    if len(mono) != n:
                        raise ValueError(f"monomial {mono} has wrong length for {self.gens}")
                    clean[tuple(mono)] = c if type(c) is Fraction else Fraction(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, gens, terms):
        # caller guarantees: tuple gens, Fraction coefficients, no zeros
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, gens):
        return cls._raw(tuple(gens), {})

    @classmethod
    def constant(cls, gens, c):
        gens = tuple(gens)
        c = Fraction(c)
        return cls._raw(gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def one(cls, gens):
        return cls.constant(gens, 1)

    @classmethod
    def var(cls, gens, name):
        gens = tuple(gens)
        try:
            i = gens.index(name)
        except ValueError:
            raise ParseError(f"unknown generator {name!r}") from None
        e = [0] * len(gens)
        e[i] = 1
        return cls._raw(gens, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, gens, exps, c=1):
        return cls(gens, {tuple(exps): c})

    # basic queries ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * len(self.gens), Fraction(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name) -> int:
        i = self.gens.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def used(self) -> tuple:
        """Names of generators that actually occur."""
        seen = [False] * len(self.gens)
        for m in self.terms:
            for i, e in enumerate(m):
                if e:
                    seen[i] = True
        return tuple(g for g, s in zip(self.gens, seen) if s)

    def involves_only(self, names) -> bool:
        allowed = set(names)
        return all(g in allowed for g in self.used())

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self.terms)

    # equality / hashing -------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.gens != self.gens:
                raise RingMismatchError(f"generators differ: {self.gens} vs {other.gens}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.gens, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s += c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.gens, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> Polynomial:
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.gens)
        return Polynomial._raw(self.gens, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, exps, c) -> Polynomial:
        """Multiply by the single term ``c * x^exps``."""
        if not c:
            return Polynomial.zero(self.gens)
        return Polynomial._raw(
            self.gens,
            {tuple(a + b for a, b in zip(m, exps)): v * c for m, v in self.terms.items()},
        )

    def max_exponent(self) -> int:
        return max((max(m, default=0) for m in self.terms), default=0)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.terms or not other.terms:
            return Polynomial.zero(self.gens)
        _check_exponent(self.max_exponent() + other.max_exponent())
        # multiply integer numerators over a common denominator; Fraction
        # arithmetic in the inner loop would dominate the cost
        t1, d1 = _integral(self.terms)
        t2, d2 = _integral(other.terms)
        out: dict = {}
        get = out.get
        for m1, c1 in t1:
            for m2, c2 in t2:
                m = tuple(map(add, m1, m2))
                out[m] = get(m, 0) + c1 * c2
        den = d1 * d2
        return Polynomial._raw(self.gens, {m: Fraction(c, den) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        _check_exponent(self.max_exponent() * k)
        result = Polynomial.one(self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # order-dependent ----------------------------------------------------
    def leading_term(self, order: MonomialOrder = DEGREVLEX):
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        key = order.key_for(self.gens)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, order: MonomialOrder = DEGREVLEX):
        key = order.key_for(self.gens)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def monic(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(1 / c)

    def content(self) -> Fraction:
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = igcd(num, c.numerator)
            den = den * c.denominator // igcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self, order: MonomialOrder = DEGREVLEX) -> Polynomial:
        """Integer-coefficient primitive part with positive leading coefficient."""
        if not self.terms:
            return self
        p = self.scale(1 / self.content())
        if p.leading_term(order)[1] < 0:
            p = -p
        return p

    # calculus / substitution -------------------------------------------
    def derivative(self, name) -> Polynomial:
        try:
            i = self.gens.index(name)
        except ValueError:
            raise ParseError(f"unknown generator {name!r}") from None
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Polynomial._raw(self.gens, out)

    def embed(self, gens) -> Polynomial:
        """Re-express over ``gens``, which must contain every used generator."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        pos = {g: i for i, g in enumerate(gens)}
        idx = []
        for i, g in enumerate(self.gens):
            if g in pos:
                idx.append((i, pos[g]))
        used = set(self.used())
        lost = used - set(gens)
        if lost:
            raise RingMismatchError(f"cannot embed: {sorted(lost)} not in {gens}")
        out = {}
        n = len(gens)
        for m, c in self.terms.items():
            e = [0] * n
            for i, j in idx:
                e[j] = m[i]
            out[tuple(e)] = c
        return Polynomial._raw(gens, out)

    def substitute(self, mapping: Mapping[str, Polynomial], gens=None) -> Polynomial:
        """Replace generators by polynomials; the result lives over ``gens``.

        Generators absent from ``mapping`` are kept and must exist in ``gens``.
        ``gens`` defaults to the generators of the images (or self's own).
        """
        if gens is None:
            imgs = list(mapping.values())
            gens = imgs[0].gens if imgs else self.gens
        gens = tuple(gens)
        images = []
        for g in self.gens:
            if g in mapping:
                img = mapping[g]
                if img.gens != gens:
                    img = img.embed(gens)
            elif g in gens:
                img = Polynomial.var(gens, g)
            else:
                img = None
            images.append(img)
        powers: dict = {}

        def power(i, e):
            key = (i, e)
            if key not in powers:
                if images[i] is None:
                    raise RingMismatchError(f"generator {self.gens[i]!r} has no image in {gens}")
                powers[key] = images[i] ** e
            return powers[key]

        acc: dict = {}
        for m, c in self.terms.items():
            t = Polynomial.constant(gens, c)
            for i, e in enumerate(m):
                if e:
                    t = t * power(i, e)
            for mm, cc in t.terms.items():
                s = acc.get(mm)
                acc[mm] = cc if s is None else s + cc
        return Polynomial._raw(gens, {m: c for m, c in acc.items() if c})

    # formatting ---------------------------------------------------------
    def format(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms(order)):
            pp = "*".join(
                g if e == 1 else f"{g}^{e}" for g, e in zip(self.gens, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not pp:
                body = str(a)
            elif a == 1:
                body = pp
            else:
                body = f"{a}*{pp}"
            if k == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()!r}, gens={self.gens})"


def exact_divide(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Return q with f = q*g, or raise NotDivisibleError."""
    if f.gens != g.gens:
        raise RingMismatchError(f"generators differ: {f.gens} vs {g.gens}")
    if not g:
        raise ZeroDivisionError("division by the zero polynomial")
    key = order.key_for(f.gens)
    lm_g, lc_g = g.leading_term(order)
    q: dict = {}
    r = f
    while r:
        m = max(r.terms, key=key)
        c = r.terms[m]
        if any(a < b for a, b in zip(m, lm_g)):
            raise NotDivisibleError(f"{g} does not divide {f}")
        e = tuple(a - b for a, b in zip(m, lm_g))
        cq = c / lc_g
        q[e] = cq
        r = r - g.mul_term(e, cq)
    return Polynomial(f.gens, q)


# ---------------------------------------------------------------------------
# rings and parsing


@dataclass(frozen=True)
class RingSpec:
    """B = A[variables] with A = Q[base]."""

    base: tuple = ()
    variables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a ring needs at least one variable")
        names = self.base + self.variables
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not _NAME.match(n):
                raise ValueError(f"bad generator name {n!r}")
            if n.startswith("_"):
                raise ValueError(f"names starting with '_' are reserved: {n!r}")

    @property
    def gens(self) -> tuple:
        return self.base + self.variables

    @property
    def n(self) -> int:
        return len(self.variables)

    def var(self, name) -> Polynomial:
        return Polynomial.var(self.gens, name)

    def zero(self) -> Polynomial:
        return Polynomial.zero(self.gens)

    def one(self) -> Polynomial:
        return Polynomial.one(self.gens)

    def const(self, c) -> Polynomial:
        return Polynomial.constant(self.gens, c)

    def parse(self, text, env: Mapping[str, Polynomial] | None = None) -> Polynomial:
        return parse(text, self, env)

    def in_base(self, f: Polynomial) -> bool:
        return f.involves_only(self.base)

    def describe(self) -> str:
        if self.base:
            return f"Q[{','.join(self.base)}][{','.join(self.variables)}]"
        return f"Q[{','.join(self.variables)}]"

    def __str__(self):
        return self.describe()


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(.))")


def _tokenize(text):
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, op = m.groups()
        if num is not None:
            toks.append(("int", int(num)))
        elif name is not None:
            toks.append(("name", name))
        elif op in "+-*^/()":
            toks.append(("op", op))
        else:
            raise ParseError(f"unexpected character {op!r} at offset {m.start(3)}")
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, gens, env):
        self.toks = toks
        self.i = 0
        self.gens = gens
        self.env = env

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            want = value or kind or "token"
            got = "end of input" if tok[0] is None else repr(tok[1])
            raise ParseError(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def expr(self):
        if self.peek() == ("op", "-"):
            self.take()
            acc = -self.term()
        else:
            if self.peek() == ("op", "+"):
                self.take()
            acc = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("op", "*"):
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            if self.peek() == ("op", "-"):
                raise ParseError("negative exponents are not allowed")
            e = self.take("int")[1]
            _check_exponent(e)
            return base**e
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            if self.peek() == ("op", "/"):
                self.take()
                den = self.take("int")[1]
                if den == 0:
                    raise ParseError("zero denominator")
                return Polynomial.constant(self.gens, Fraction(val, den))
            return Polynomial.constant(self.gens, val)
        if kind == "name":
            self.take()
            if val in self.env:
                return self.env[val]
            if val in self.gens:
                return Polynomial.var(self.gens, val)
            raise ParseError(f"unknown name {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            e = self.expr()
            self.take("op", ")")
            return e
        if kind == "op" and val == "-":
            self.take()
            return -self.factor()
        got = "end of input" if kind is None else repr(val)
        raise ParseError(f"unexpected {got}")


def parse(text: str, spec, env: Mapping[str, Polynomial] | None = None) -> Polynomial:
    """Parse polynomial text over ``spec`` (a RingSpec or a generator tuple).

    ``env`` maps extra names (e.g. named bindings) to polynomials.
    """
    gens = spec.gens if isinstance(spec, RingSpec) else tuple(spec)
    toks = _tokenize(text)
    if not toks:
        raise ParseError("empty polynomial")
    p = _Parser(toks, gens, dict(env or {}))
    result = p.expr()
    if p.i != len(toks):
        raise ParseError(f"trailing input at token {p.toks[p.i][1]!r}")
    return result


def polys(spec: RingSpec, *texts: str) -> list:
    return [parse(t, spec) for t in texts]


def all_monomials(nvars: int, max_degree: int) -> Iterable[tuple]:
    """Exponent tuples of total degree <= max_degree, graded then lex-descending."""
    for d in range(max_degree + 1):
        yield from _monos_of_degree(nvars, d)


def _monos_of_degree(nvars, d):
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for first in range(d, -1, -1):
        for rest in _monos_of_degree(nvars - 1, d - first):
            yield (first,) + rest
