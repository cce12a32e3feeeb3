"""Exploring ker D: a degree-bounded oracle, local slices, Dixmier images and
bounded rounds of kernel-generator closure.

Kernel generation is only semi-decidable (kernels need not be finitely
generated), so :func:`kernel_generator_rounds` reports ``stabilized`` only
when its closure step is exhausted and the degree-bounded oracle agrees.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import factorial

from .derivation import Derivation, apply, certify_lnd
from .errors import InvalidSliceError, NotDivisibleError, NotLNDError, ResourceError
from .groebner import DEFAULT_MAX_STEPS, Subalgebra, gcd, reduce
from .linalg import nullspace, solve
from .poly import Polynomial, all_monomials, exact_divide

DEFAULT_ROUNDS = 6
DEFAULT_ORACLE_DEGREE = 6
DEFAULT_SLICE_CAP = 3
DEFAULT_MAX_DIMENSION = 20_000
DEFAULT_MAX_NEW = 2


@dataclass(frozen=True)
class KernelBasis:
    degree_bound: int
    basis: tuple

    def __len__(self):
        return len(self.basis)

    @property
    def dimension(self) -> int:
        return len(self.basis)


def kernel_basis_up_to_degree(D: Derivation, d: int,
                              max_dimension: int = DEFAULT_MAX_DIMENSION) -> KernelBasis:
    """Null space of D on polynomials of total degree <= d (all generators)."""
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    gens = D.spec.gens
    monos = list(all_monomials(len(gens), d))
    if len(monos) > max_dimension:
        raise ResourceError("kernel oracle dimension", max_dimension)
    columns = [apply(D, Polynomial.monomial(gens, m)).terms for m in monos]
    basis = []
    for vec in nullspace(columns):
        p = Polynomial(gens, {monos[j]: c for j, c in vec.items()})
        if apply(D, p):
            raise AssertionError(f"oracle produced non-kernel element {p}")
        basis.append(p)
    return KernelBasis(d, tuple(basis))


@dataclass(frozen=True)
class LocalSlice:
    s: Polynomial
    a: Polynomial


@dataclass(frozen=True)
class NotFound:
    cap: int

    def __bool__(self):
        return False


def check_slice(D: Derivation, sl: LocalSlice) -> None:
    if not sl.a or apply(D, sl.s) != sl.a or apply(D, sl.a):
        raise InvalidSliceError(f"({sl.s}, {sl.a}) is not a local slice of {D.name}")


def _slice_candidates(D: Derivation, degree_cap: int):
    spec = D.spec
    for v in spec.variables:
        yield spec.var(v)
    for m in all_monomials(len(spec.gens), degree_cap):
        if sum(m) >= 2:
            yield Polynomial.monomial(spec.gens, m)


def find_local_slice(D: Derivation, degree_cap: int = DEFAULT_SLICE_CAP, accept=None):
    """First s (variables, then monomials by degree) with D(s) != 0 and D^2(s) = 0.

    ``accept`` optionally restricts which a = D(s) qualify.
    """
    for s in _slice_candidates(D, degree_cap):
        a = apply(D, s)
        if a and not apply(D, a) and (accept is None or accept(a)):
            return LocalSlice(s, a)
    return NotFound(degree_cap)


@dataclass(frozen=True)
class DixmierImage:
    numerator: Polynomial
    a_power: int


def dixmier_image(D: Derivation, sl: LocalSlice, f: Polynomial) -> DixmierImage:
    """pi(f) = sum_i (-1)^i D^i(f) s^i / (i! a^i), written as numerator / a^k.

    k is minimal and the numerator is primitive with positive leading
    coefficient (degrevlex).
    """
    check_slice(D, sl)
    derivs = []
    g = f
    while g:
        derivs.append(g)
        g = apply(D, g)
    if not derivs:
        return DixmierImage(f, 0)
    m = len(derivs) - 1
    num = Polynomial.zero(f.gens)
    spow = Polynomial.one(f.gens)
    apows = [Polynomial.one(f.gens)]
    for _ in range(m):
        apows.append(apows[-1] * sl.a)
    for i, di in enumerate(derivs):
        term = (di * spow * apows[m - i]).scale(Fraction((-1) ** i, factorial(i)))
        num = num + term
        spow = spow * sl.s
    k = m
    while k > 0 and num:
        try:
            num = exact_divide(num, sl.a)
        except NotDivisibleError:
            break
        k -= 1
    if not num:
        return DixmierImage(num, 0)
    return DixmierImage(num.primitive(), k)


def squarefree_part(a: Polynomial, max_steps: int = DEFAULT_MAX_STEPS) -> Polynomial:
    """a / gcd(a, da/dx for all x); characteristic zero makes this squarefree."""
    if a.is_constant():
        return Polynomial.one(a.gens)
    parts = [a] + [a.derivative(x) for x in a.used()]
    g = _fold(lambda u, v: gcd(u, v, max_steps), parts)
    return exact_divide(a, g).primitive()


@dataclass(frozen=True)
class KernelRounds:
    stabilized: bool
    generators: tuple
    rounds: int
    slice: LocalSlice | None = None
    witness: Polynomial | None = None
    reason: str = ""
    added: tuple = field(default_factory=tuple)  # generators added per round

    def __bool__(self):
        return self.stabilized


def _exponent_vectors(degrees, bound, limit):
    """Exponent vectors e with sum e_i * degrees[i] <= bound, or None past ``limit``."""
    out = [()]
    for d in degrees:
        nxt = []
        for e in out:
            used = sum(x * y for x, y in zip(e, degrees))
            k = 0
            while used + k * d <= bound:
                nxt.append(e + (k,))
                k += 1
                if len(nxt) > limit:
                    return None
        out = nxt
    return out


class _Closure:
    """Candidate kernel generators, grown by division by the modulus m."""

    def __init__(self, D, modulus, max_steps, span_limit=4000):
        self.D = D
        self.modulus = modulus
        self.max_steps = max_steps
        self.span_limit = span_limit
        self.generators: list = []
        self.base = [D.spec.var(b) for b in D.spec.base]

    def strip(self, p):
        # kernels are factorially closed, so factors shared with the modulus can go
        while p and not p.is_constant():
            g = gcd(p, self.modulus, self.max_steps)
            if g.is_constant():
                break
            p = exact_divide(p, g)
        return p.primitive() if p else p

    def in_span(self, p) -> bool:
        """Sufficient membership test: p is a Q-combination of products of
        generators (base generators included) of total degree <= deg p."""
        gens = self.base + self.generators
        degs = [g.degree() for g in gens]
        vecs = _exponent_vectors(degs, p.degree(), self.span_limit)
        if vecs is None:
            return False
        columns = []
        for e in vecs:
            q = Polynomial.one(p.gens)
            for g, k in zip(gens, e):
                if k:
                    q = q * g**k
            columns.append(q.terms)
        return solve(columns, p.terms) is not None

    def offer(self, p, strip=True) -> bool:
        p = self.strip(p) if strip else p.primitive()
        if not p or p.is_constant() or self.D.spec.in_base(p):
            return False
        if self.in_span(p):
            return False
        self.generators.append(p)
        return True

    def quotients(self, fresh):
        """h with m*h a Q-combination of products that involve a fresh generator."""
        pool = self.base + self.generators
        fresh_ids = {id(g) for g in fresh}
        products = list(fresh)
        for i in range(len(pool)):
            for j in range(i, len(pool)):
                if id(pool[i]) in fresh_ids or id(pool[j]) in fresh_ids:
                    products.append(pool[i] * pool[j])
        m = self.modulus
        columns = [reduce(q, [m]).terms for q in products]
        out = []
        for vec in nullspace(columns):
            h = Polynomial.zero(m.gens)
            for j, c in sorted(vec.items()):
                h = h + products[j].scale(c)
            if h:
                out.append(self.strip(exact_divide(h, m)))
        return [h for h in out if h and not h.is_constant()]


def kernel_generator_rounds(D: Derivation, rounds: int = DEFAULT_ROUNDS,
                            oracle_degree: int = DEFAULT_ORACLE_DEGREE,
                            slice_cap: int = DEFAULT_SLICE_CAP,
                            max_steps: int = DEFAULT_MAX_STEPS,
                            max_new_per_round: int = DEFAULT_MAX_NEW) -> KernelRounds:
    """Bounded search for generators of ker D as an A-algebra.

    Round 0 seeds the candidates with the squarefree part m of a = D(s) for a
    local slice s and the cleared Dixmier images of the variables.  Each later
    round forms pairwise products involving last round's additions, finds
    Q-linear combinations divisible by m, and adds up to ``max_new_per_round``
    of the quotients (lowest degree first) that are not already spanned;
    the rest wait for the next round.

    The result is stabilized only when a round adds nothing and every element
    of the degree-``oracle_degree`` kernel oracle lies in the candidate
    algebra.  Oracle elements are never fed back as generators: a
    degree-bounded oracle cannot vouch for finite generation.
    """
    spec = D.spec
    if D.is_zero():
        closure = _Closure(D, spec.one(), max_steps)
        for v in spec.variables:
            closure.offer(spec.var(v), strip=False)
        return _verdict(closure, D, 0, None, oracle_degree, ())
    if not certify_lnd(D):
        raise NotLNDError(f"{D.name} is not certified locally nilpotent")
    sl = find_local_slice(D, slice_cap)
    if not sl:
        return KernelRounds(False, (), 0, None, None, f"no local slice up to degree {slice_cap}")
    m = squarefree_part(sl.a, max_steps)
    closure = _Closure(D, m, max_steps)
    closure.offer(m, strip=False)
    for v in spec.variables:
        closure.offer(dixmier_image(D, sl, spec.var(v)).numerator)
    fresh = list(closure.generators) + closure.base
    added = [len(closure.generators)]
    pending: list = []
    for r in range(1, rounds + 1):
        before = len(closure.generators)
        pending = _offer_some(closure, pending + closure.quotients(fresh), max_new_per_round)
        fresh = closure.generators[before:]
        added.append(len(fresh))
        if not fresh:
            return _verdict(closure, D, r, sl, oracle_degree, tuple(added))
    return KernelRounds(False, tuple(closure.generators), rounds, sl, None,
                        f"still growing after {rounds} rounds", tuple(added))


def _offer_some(closure, candidates, limit):
    """Offer candidates lowest degree first; return the ones left over."""
    before = len(closure.generators)
    seen = set()
    backlog = []
    for h in sorted(candidates, key=lambda h: (h.degree(), len(h), h.format())):
        if h in seen:
            continue
        seen.add(h)
        if len(closure.generators) - before >= limit:
            backlog.append(h)
        else:
            closure.offer(h, strip=False)
    return backlog


def _verdict(closure, D, r, sl, oracle_degree, added):
    gens = tuple(closure.generators)
    alg = None
    for p in kernel_basis_up_to_degree(D, oracle_degree).basis:
        if p.is_constant() or D.spec.in_base(p) or closure.in_span(p):
            continue
        if alg is None:
            alg = Subalgebra(gens, D.spec, closure.max_steps)
        if not alg.membership(p).member:
            return KernelRounds(False, gens, r, sl, p.primitive(),
                                "closure exhausted; an oracle kernel element lies outside "
                                "the candidate algebra", added)
    return KernelRounds(True, gens, r, sl, None,
                        "closure exhausted and every oracle element is a member", added)
