"""Buchberger's algorithm and the ideal/subalgebra queries built on it.

Bases are returned reduced, monic, and sorted by descending leading
monomial, so equal ideals give identical output.  Subalgebra membership uses
tag variables ``_t1, _t2, ...`` appended after the ambient generators and an
elimination order whose first block is the ambient derivation variables.
"""
from __future__ import annotations

import heapq
from operator import add, le, sub
from dataclasses import dataclass
from fractions import Fraction

from .errors import LNDError, ResourceError, RingMismatchError
from .orders import DEGREVLEX, MonomialOrder, block
from .poly import Polynomial, RingSpec, exact_divide

DEFAULT_MAX_STEPS = 100_000


def _divides(a, b):
    return all(map(le, a, b))


def _lcm(a, b):
    return tuple(map(max, a, b))


def _reduce_terms(terms, basis, key):
    """Full normal form of a term dict against [(lm, lc, terms)]."""
    p = dict(terms)
    r = {}
    heap = [(tuple(-x for x in key(m)), m) for m in p]
    heapq.heapify(heap)
    while heap:
        m = heapq.heappop(heap)[1]
        c = p.get(m)
        if c is None:
            continue
        for lm, lc, g in basis:
            if all(map(le, lm, m)):
                q = c / lc
                shift = tuple(map(sub, m, lm))
                for gm, gc in g.items():
                    mm = tuple(map(add, shift, gm))
                    old = p.get(mm)
                    if old is None:
                        p[mm] = -q * gc
                        heapq.heappush(heap, (tuple(-x for x in key(mm)), mm))
                    else:
                        v = old - q * gc
                        if v:
                            p[mm] = v
                        else:
                            del p[mm]
                break
        else:
            r[m] = c
            del p[m]
    return r


def _entry(p: Polynomial, key):
    lm = max(p.terms, key=key)
    return lm, p.terms[lm], p.terms


def reduce(f: Polynomial, G, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Normal form of ``f`` modulo the list ``G`` (division algorithm, all terms)."""
    key = order.key_for(f.gens)
    basis = []
    for g in G:
        if g.gens != f.gens:
            raise RingMismatchError(f"generators differ: {f.gens} vs {g.gens}")
        if g:
            basis.append(_entry(g, key))
    if not basis:
        return f
    return Polynomial(f.gens, _reduce_terms(f.terms, basis, key))


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    lf, cf = f.leading_term(order)
    lg, cg = g.leading_term(order)
    m = _lcm(lf, lg)
    a = tuple(x - y for x, y in zip(m, lf))
    b = tuple(x - y for x, y in zip(m, lg))
    return f.mul_term(a, 1 / cf) - g.mul_term(b, 1 / cg)


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder
    ring: tuple
    reduced: bool = True
    steps: int = 0

    def reduce(self, f: Polynomial) -> Polynomial:
        return reduce(f, self.generators, self.order)

    def contains(self, f: Polynomial) -> bool:
        return not self.reduce(f)

    def is_unit_ideal(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_constant()

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def buchberger(gens, order: MonomialOrder = DEGREVLEX, max_steps: int = DEFAULT_MAX_STEPS) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Normal selection strategy with the coprime and chain criteria.  Raises
    ResourceError after ``max_steps`` S-polynomial reductions.
    """
    gens = [g for g in gens if g]
    if not gens:
        raise ValueError("buchberger needs at least one nonzero generator")
    ring = gens[0].gens
    for g in gens:
        if g.gens != ring:
            raise RingMismatchError(f"generators differ: {ring} vs {g.gens}")
    key = order.key_for(ring)

    G: list = []  # (lm, lc, terms)
    pairs: set = set()
    queue: list = []  # normal strategy: smallest lcm first, then oldest pair
    steps = 0

    def add(terms):
        lm = max(terms, key=key)
        lc = terms[lm]
        terms = {m: c / lc for m, c in terms.items()}
        j = len(G)
        G.append((lm, Fraction(1), terms))
        for i in range(j):
            pairs.add((i, j))
            heapq.heappush(queue, (key(_lcm(G[i][0], lm)), j, i))

    for g in gens:
        add(g.terms)

    while queue:
        _, j, i = heapq.heappop(queue)
        pairs.discard((i, j))
        li, lj = G[i][0], G[j][0]
        m = _lcm(li, lj)
        if all(not (x and y) for x, y in zip(li, lj)):
            continue
        if any(
            k != i and k != j
            and _divides(G[k][0], m)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(G))
        ):
            continue
        steps += 1
        if steps > max_steps:
            raise ResourceError("Groebner S-polynomial", max_steps)
        s = _spoly_terms(G[i], G[j], m)
        r = _reduce_terms(s, G, key)
        if r:
            add(r)

    return GroebnerBasis(_interreduce(G, ring, key), order, ring, True, steps)


def _spoly_terms(a, b, m):
    la, _, ta = a
    lb, _, tb = b
    sa = tuple(x - y for x, y in zip(m, la))
    sb = tuple(x - y for x, y in zip(m, lb))
    out = {}
    for t, c in ta.items():
        out[tuple(x + y for x, y in zip(t, sa))] = c
    for t, c in tb.items():
        mm = tuple(x + y for x, y in zip(t, sb))
        v = out.get(mm, 0) - c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _interreduce(G, ring, key):
    entries = sorted(G, key=lambda e: key(e[0]))
    minimal = []
    for e in entries:
        if not any(_divides(o[0], e[0]) for o in minimal):
            minimal = [o for o in minimal if not _divides(e[0], o[0])]
            minimal.append(e)
    out = []
    for idx, e in enumerate(minimal):
        others = [o for k, o in enumerate(minimal) if k != idx]
        tail = {m: c for m, c in e[2].items() if m != e[0]}
        r = _reduce_terms(tail, others, key) if others else tail
        r[e[0]] = e[1]
        out.append(Polynomial(ring, r).monic(_Ord(key)))
    out.sort(key=lambda p: key(max(p.terms, key=key)), reverse=True)
    return tuple(out)


class _Ord:
    """Adapter so Polynomial.monic can use an already-resolved key."""

    def __init__(self, key):
        self._key = key

    def key_for(self, gens):
        return self._key


def verify_groebner(G, order: MonomialOrder | None = None) -> bool:
    """Check every pairwise S-polynomial reduces to zero (no criteria used)."""
    gens = list(G)
    order = order or (G.order if isinstance(G, GroebnerBasis) else DEGREVLEX)
    for i in range(len(gens)):
        for j in range(i + 1, len(gens)):
            if reduce(s_polynomial(gens[i], gens[j], order), gens, order):
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    lms = [g.leading_term(G.order) for g in G.generators]
    for i, g in enumerate(G.generators):
        if lms[i][1] != 1:
            return False
        for j, (lm, _) in enumerate(lms):
            if j != i and any(_divides(lm, m) for m in g.terms):
                return False
    return True


def ideal_membership(f: Polynomial, gens, order: MonomialOrder = DEGREVLEX,
                     max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    if not f:
        return True
    gens = [g for g in gens if g]
    if not gens:
        return False
    return buchberger(gens, order, max_steps).contains(f)


# ---------------------------------------------------------------------------
# subalgebras


def tag_names(k: int) -> tuple:
    return tuple(f"_t{i + 1}" for i in range(k))


@dataclass(frozen=True)
class MembershipCertificate:
    member: bool
    preimage: Polynomial | None = None
    tags: tuple = ()

    def check(self, f: Polynomial, generators, spec: RingSpec) -> bool:
        """Substitute the generators for the tags and compare with ``f``."""
        if not self.member:
            return True
        ext = self.preimage.gens
        mapping = {t: g.embed(ext) for t, g in zip(self.tags, generators)}
        back = self.preimage.substitute(mapping, ext)
        return back.embed(spec.gens) == f if back.involves_only(spec.gens) else False


class Subalgebra:
    """The A-subalgebra A[g1, ..., gk] of B, with a cached elimination basis."""

    def __init__(self, generators, spec: RingSpec, max_steps: int = DEFAULT_MAX_STEPS):
        self.spec = spec
        self.generators = tuple(generators)
        for g in self.generators:
            if g.gens != spec.gens:
                raise RingMismatchError(f"generator {g} is not over {spec.gens}")
        self.tags = tag_names(len(self.generators))
        self.ext = spec.gens + self.tags
        self.order = block(spec.variables)
        self.allowed = spec.base + self.tags
        ideal = [g.embed(self.ext) - Polynomial.var(self.ext, t)
                 for g, t in zip(self.generators, self.tags)]
        self.basis = buchberger(ideal, self.order, max_steps) if ideal else None

    def membership(self, f: Polynomial) -> MembershipCertificate:
        if f.gens != self.spec.gens:
            raise RingMismatchError(f"{f} is not over {self.spec.gens}")
        fe = f.embed(self.ext)
        r = self.basis.reduce(fe) if self.basis is not None else fe
        if not r.involves_only(self.allowed):
            return MembershipCertificate(False, None, self.tags)
        cert = MembershipCertificate(True, r, self.tags)
        if not cert.check(f, self.generators, self.spec):
            raise LNDError(f"internal error: preimage of {f} failed substitution check")
        return cert

    def __contains__(self, f: Polynomial) -> bool:
        return self.membership(f).member

    def describe(self) -> str:
        inner = ",".join(str(g) for g in self.generators)
        if self.spec.base:
            return f"Q[{','.join(self.spec.base)}][{inner}]"
        return f"Q[{inner}]"


def subalgebra_membership(f: Polynomial, gens, spec: RingSpec,
                          max_steps: int = DEFAULT_MAX_STEPS) -> MembershipCertificate:
    return Subalgebra(gens, spec, max_steps).membership(f)


def subalgebra_contains_all(inner, outer, spec: RingSpec, max_steps: int = DEFAULT_MAX_STEPS):
    """First element of ``inner`` outside A[outer], or None."""
    alg = Subalgebra(outer, spec, max_steps)
    for g in inner:
        if not alg.membership(g).member:
            return g
    return None


def subalgebra_equal(gens1, gens2, spec: RingSpec, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    return (subalgebra_contains_all(gens1, gens2, spec, max_steps) is None
            and subalgebra_contains_all(gens2, gens1, spec, max_steps) is None)


# ---------------------------------------------------------------------------
# gcd / lcm via ideal intersection


def _fresh(gens):
    k = 1
    while f"_t{k}" in gens:
        k += 1
    return f"_t{k}"


def lcm(f: Polynomial, g: Polynomial, max_steps: int = DEFAULT_MAX_STEPS) -> Polynomial:
    """Generator of (f) ∩ (g), monic under degrevlex."""
    if f.gens != g.gens:
        raise RingMismatchError(f"generators differ: {f.gens} vs {g.gens}")
    if not f or not g:
        return Polynomial.zero(f.gens)
    t = _fresh(f.gens)
    ext = f.gens + (t,)
    tv = Polynomial.var(ext, t)
    fe, ge = f.embed(ext), g.embed(ext)
    G = buchberger([tv * fe, (1 - tv) * ge], block((t,)), max_steps)
    free = [p for p in G.generators if p.degree_in(t) <= 0]
    if len(free) != 1:
        raise LNDError(f"intersection of principal ideals gave {len(free)} generators")
    return free[0].embed(f.gens).monic()


def gcd(f: Polynomial, g: Polynomial, max_steps: int = DEFAULT_MAX_STEPS) -> Polynomial:
    """Greatest common divisor, monic under degrevlex; computed as f*g / lcm(f, g)."""
    if f.gens != g.gens:
        raise RingMismatchError(f"generators differ: {f.gens} vs {g.gens}")
    if not f and not g:
        raise ValueError("gcd(0, 0) is undefined")
    if not f:
        return g.monic()
    if not g:
        return f.monic()
    if f.is_constant() or g.is_constant():
        return Polynomial.one(f.gens)
    return exact_divide(f * g, lcm(f, g, max_steps)).monic()
