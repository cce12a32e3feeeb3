"""Independent oracles used by the tests.

Nothing here touches Groebner bases: membership questions are answered by
exact linear algebra over a truncated monomial space.
"""
import random
from fractions import Fraction

from lnd import Polynomial
from lnd.linalg import solve
from lnd.poly import all_monomials


def ideal_membership_linear(f, gens, degree_bound):
    """f in (gens) with a representation sum h_i g_i, deg(h_i g_i) <= degree_bound."""
    vars_ = f.gens
    columns = []
    for g in gens:
        if not g:
            continue
        for m in all_monomials(len(vars_), degree_bound - g.degree()):
            columns.append(g.mul_term(m, Fraction(1)).terms)
    return solve(columns, f.terms) is not None


def subalgebra_span(f, gens, base=()):
    """f as a Q-combination of products of ``gens`` (and base generators)
    of degree <= deg f.  Sufficient for membership; exact when every
    generator is homogeneous in a positive grading."""
    pool = [Polynomial.var(f.gens, b) for b in base] + list(gens)
    products = [Polynomial.one(f.gens)]
    frontier = [(Polynomial.one(f.gens), 0)]
    d = max(f.degree(), 0)
    while frontier:
        nxt = []
        for p, start in frontier:
            for i in range(start, len(pool)):
                q = p * pool[i]
                if q.degree() <= d:
                    products.append(q)
                    nxt.append((q, i))
        frontier = nxt
    return solve([p.terms for p in products], f.terms) is not None


def random_poly(rng: random.Random, gens, max_degree, max_terms, coeff=4, min_degree=0):
    monos = [m for m in all_monomials(len(gens), max_degree) if sum(m) >= min_degree]
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        terms[rng.choice(monos)] = Fraction(rng.randint(-coeff, coeff) or 1, rng.randint(1, 2))
    return Polynomial(gens, terms)


def membership_instances(seed=2024, count=50, gens=("X", "Y", "Z")):
    """``count`` (query, generators, constructed_member) triples; half constructed members."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        gs = [random_poly(rng, gens, rng.randint(1, 3), 3, min_degree=1) for _ in range(rng.randint(2, 3))]
        if k % 2 == 0:
            f = Polynomial.zero(gens)
            for g in gs:
                f = f + random_poly(rng, gens, max(0, 4 - g.degree()), 2) * g
            if not f:
                f = gs[0]
            member = True
        else:
            f = random_poly(rng, gens, 4, 4)
            member = None
        out.append((f, gs, member))
    return out
