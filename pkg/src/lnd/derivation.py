"""A-derivations of B = A[X1..Xn]: Leibniz extension and certified properties."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce as _fold
from typing import Mapping

from .errors import RingMismatchError, ZeroDerivationError
from .groebner import DEFAULT_MAX_STEPS, Subalgebra, gcd
from .poly import Polynomial, RingSpec

DEFAULT_NILPOTENCY_CAP = 256


class Derivation:
    """An A-derivation, given by the images of the derivation variables.

    Base generators are constants for D; variables missing from ``images``
    map to zero.
    """

    __slots__ = ("spec", "images", "name")

    def __init__(self, spec: RingSpec, images: Mapping[str, Polynomial], name: str = "D"):
        self.spec = spec
        self.name = name
        unknown = set(images) - set(spec.variables)
        if unknown:
            raise RingMismatchError(
                f"images given for {sorted(unknown)}, which are not derivation variables of {spec}")
        imgs = {}
        for v in spec.variables:
            p = images.get(v)
            if p is None:
                p = spec.zero()
            elif p.gens != spec.gens:
                raise RingMismatchError(f"image of {v} is not over {spec.gens}")
            imgs[v] = p
        self.images = imgs

    @classmethod
    def zero(cls, spec: RingSpec):
        return cls(spec, {})

    @classmethod
    def partial(cls, spec: RingSpec, var: str, coefficient: Polynomial | None = None):
        """``coefficient * d/d(var)``."""
        return cls(spec, {var: coefficient if coefficient is not None else spec.one()})

    def is_zero(self) -> bool:
        return not any(self.images.values())

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def power(self, f: Polynomial, k: int) -> Polynomial:
        for _ in range(k):
            if not f:
                break
            f = apply(self, f)
        return f

    def __eq__(self, other):
        return isinstance(other, Derivation) and self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash((self.spec, tuple(self.images.items())))

    def __repr__(self):
        body = ", ".join(f"{v} -> {p}" for v, p in self.images.items() if p)
        return f"Derivation({self.spec}: {body or '0'})"


def apply(D: Derivation, f: Polynomial) -> Polynomial:
    """D(f) = sum over derivation variables v of df/dv * D(v)."""
    if f.gens != D.spec.gens:
        raise RingMismatchError(f"{f} is not over {D.spec.gens}")
    result = Polynomial.zero(f.gens)
    for v, img in D.images.items():
        if img:
            d = f.derivative(v)
            if d:
                result = result + d * img
    return result


@dataclass(frozen=True)
class NilpotencyWitness:
    element: Polynomial
    steps: int


@dataclass(frozen=True)
class Unknown:
    """No conclusion within ``cap`` applications of D."""

    element: Polynomial | None
    cap: int


def nilpotency_witness(D: Derivation, f: Polynomial, cap: int = DEFAULT_NILPOTENCY_CAP):
    """Least s <= cap with D^s(f) = 0 (s >= 1), else Unknown."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    g = f
    for s in range(1, cap + 1):
        g = apply(D, g)
        if not g:
            return NilpotencyWitness(f, s)
    return Unknown(f, cap)


@dataclass(frozen=True)
class LNDCertificate:
    """Per-variable nilpotency witnesses.

    Certification of the variables suffices: the elements b with D^s(b) = 0
    for some s form a subalgebra containing A, because
    D^m(fg) = sum_i C(m, i) D^i(f) D^(m-i)(g) vanishes once m >= s_f + s_g - 1.
    """

    witnesses: dict = field(default_factory=dict)
    cap: int = DEFAULT_NILPOTENCY_CAP

    @property
    def certified(self) -> bool:
        return all(isinstance(w, NilpotencyWitness) for w in self.witnesses.values())

    def steps(self) -> dict:
        return {v: (w.steps if isinstance(w, NilpotencyWitness) else None)
                for v, w in self.witnesses.items()}

    def __bool__(self):
        return self.certified


def certify_lnd(D: Derivation, cap: int = DEFAULT_NILPOTENCY_CAP) -> LNDCertificate:
    wit = {}
    for v in D.spec.variables:
        wit[v] = nilpotency_witness(D, D.spec.var(v), cap)
    return LNDCertificate(wit, cap)


def is_triangular_in(D: Derivation, coords, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """True iff D(coords[i]) lies in A[coords[0], ..., coords[i-1]] for every i."""
    return triangularity_failure(D, coords, max_steps) is None


def triangularity_failure(D: Derivation, coords, max_steps: int = DEFAULT_MAX_STEPS):
    """Index of the first coordinate whose image escapes the previous ones, or None."""
    coords = list(coords)
    if len(coords) != D.spec.n:
        raise ValueError(f"expected {D.spec.n} coordinates, got {len(coords)}")
    for i, c in enumerate(coords):
        img = apply(D, c)
        if not img or D.spec.in_base(img):
            continue
        if i == 0 or not Subalgebra(coords[:i], D.spec, max_steps).membership(img).member:
            return i
    return None


@dataclass(frozen=True)
class IrreducibilityCertificate:
    irreducible: bool
    gcd: Polynomial


def is_irreducible(D: Derivation, max_steps: int = DEFAULT_MAX_STEPS) -> IrreducibilityCertificate:
    """D is irreducible iff the gcd of its nonzero variable images is a unit.

    Units of B are the nonzero rational constants.
    """
    images = [p for p in D.images.values() if p]
    if not images:
        raise ZeroDerivationError("the zero derivation has no irreducibility verdict")
    g = _fold(lambda a, b: gcd(a, b, max_steps), images).monic()
    return IrreducibilityCertificate(g.is_constant(), g)


def is_irreducible_over_fraction_field(D: Derivation, max_steps: int = DEFAULT_MAX_STEPS) -> bool:
    """Irreducibility of the extension of D to K[X1..Xn], K = Frac(A).

    Elements of A become units, so only the part of the gcd that involves the
    derivation variables matters.
    """
    g = is_irreducible(D, max_steps).gcd
    return g.involves_only(D.spec.base)
