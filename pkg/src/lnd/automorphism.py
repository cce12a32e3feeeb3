"""Endomorphisms of B over A, exponentials of LNDs, and coordinate checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .derivation import Derivation, LNDCertificate, apply
from .errors import (GammaMembershipFailed, NotACoordinateSystemError, NotInKernelError,
                     NotLNDError, RingMismatchError)
from .groebner import DEFAULT_MAX_STEPS, Subalgebra
from .poly import Polynomial, RingSpec


class Endomorphism:
    """A-algebra endomorphism of B, fixed by the images of the variables."""

    __slots__ = ("spec", "images")

    def __init__(self, spec: RingSpec, images: Mapping[str, Polynomial]):
        self.spec = spec
        imgs = {}
        for b in spec.base:
            if b in images and images[b] != spec.var(b):
                raise RingMismatchError(f"base generator {b} must be fixed")
        for v in spec.variables:
            p = images.get(v)
            if p is None:
                p = spec.var(v)
            elif p.gens != spec.gens:
                raise RingMismatchError(f"image of {v} is not over {spec.gens}")
            imgs[v] = p
        self.images = imgs

    @classmethod
    def identity(cls, spec: RingSpec):
        return cls(spec, {})

    @classmethod
    def from_tuple(cls, spec: RingSpec, coords):
        """The map sending the i-th variable to coords[i]."""
        coords = list(coords)
        if len(coords) != spec.n:
            raise ValueError(f"expected {spec.n} entries, got {len(coords)}")
        return cls(spec, dict(zip(spec.variables, coords)))

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply_endo(self, f)

    def image(self, name) -> Polynomial:
        if name in self.images:
            return self.images[name]
        return self.spec.var(name)

    def is_identity(self) -> bool:
        return all(p == self.spec.var(v) for v, p in self.images.items())

    def __eq__(self, other):
        return isinstance(other, Endomorphism) and self.spec == other.spec and self.images == other.images

    def __hash__(self):
        return hash((self.spec, tuple(self.images.items())))

    def __repr__(self):
        body = ", ".join(f"{v} -> {p}" for v, p in self.images.items())
        return f"Endomorphism({body})"


def apply_endo(phi: Endomorphism, f: Polynomial) -> Polynomial:
    if f.gens != phi.spec.gens:
        raise RingMismatchError(f"{f} is not over {phi.spec.gens}")
    return f.substitute(phi.images, phi.spec.gens)


def compose(phi: Endomorphism, psi: Endomorphism) -> Endomorphism:
    """phi ∘ psi: v -> phi(psi(v))."""
    if phi.spec != psi.spec:
        raise RingMismatchError("endomorphisms live on different rings")
    return Endomorphism(phi.spec, {v: apply_endo(phi, p) for v, p in psi.images.items()})


def exp(D: Derivation, f: Polynomial, certificate: LNDCertificate) -> Endomorphism:
    """exp(fD): v -> sum_j f^j D^j(v) / j!.

    ``certificate`` must certify D as locally nilpotent and f must lie in ker D;
    the inverse automorphism is exp(D, -f).
    """
    if not isinstance(certificate, LNDCertificate) or not certificate.certified:
        raise NotLNDError("exp needs a certified locally nilpotent derivation")
    if apply(D, f):
        raise NotInKernelError(f"{f} is not in the kernel of {D.name}")
    images = {}
    for v in D.spec.variables:
        term = D.spec.var(v)
        total = term
        fpow = D.spec.one()
        for j in range(1, certificate.witnesses[v].steps):
            term = apply(D, term)
            fpow = fpow * f
            total = total + (fpow * term).scale(Fraction(1, factorial(j)))
        images[v] = total
    return Endomorphism(D.spec, images)


def jacobian_determinant(coords, spec: RingSpec) -> Polynomial:
    """det(d coords[i] / d variable[j]) over the derivation variables."""
    rows = [[c.derivative(v) for v in spec.variables] for c in coords]
    n = len(rows)
    memo: dict = {}

    def minor(row, cols):
        # Laplace expansion along ``row`` using the column set ``cols``
        if row == n:
            return spec.one()
        key = (row, cols)
        if key in memo:
            return memo[key]
        acc = spec.zero()
        sign = 1
        for j in range(n):
            if cols & (1 << j):
                entry = rows[row][j]
                if entry:
                    sub = minor(row + 1, cols & ~(1 << j))
                    if sub:
                        acc = acc + entry * sub if sign > 0 else acc - entry * sub
                sign = -sign
        memo[key] = acc
        return acc

    return minor(0, (1 << n) - 1)


@dataclass(frozen=True)
class CoordinateCertificate:
    coords: tuple
    inverse: Endomorphism
    jacobian_det: Polynomial
    preimages: tuple  # membership preimages over the tag ring, one per variable

    @property
    def forward(self) -> Endomorphism:
        return Endomorphism.from_tuple(self.inverse.spec, self.coords)

    def check(self) -> bool:
        spec = self.inverse.spec
        fwd = self.forward
        return (compose(fwd, self.inverse).is_identity()
                and all(apply_endo(self.inverse, c) == spec.var(v)
                        for c, v in zip(self.coords, spec.variables)))


@dataclass(frozen=True)
class NotCoordinateSystem:
    reason: str
    variable: str | None = None
    jacobian_det: Polynomial | None = None

    def __bool__(self):
        return False


def check_coordinate_system(coords, spec: RingSpec, max_steps: int = DEFAULT_MAX_STEPS):
    """CoordinateCertificate if A[coords] = B, else NotCoordinateSystem.

    The Jacobian determinant being a nonzero constant is checked first as a
    cheap necessary condition; sufficiency comes from expressing every
    variable as a polynomial in the coordinates.
    """
    coords = tuple(coords)
    if len(coords) != spec.n:
        raise ValueError(f"expected {spec.n} coordinates, got {len(coords)}")
    for c in coords:
        if c.gens != spec.gens:
            raise RingMismatchError(f"{c} is not over {spec.gens}")
    det = jacobian_determinant(coords, spec)
    if not det or not det.is_constant():
        return NotCoordinateSystem("jacobian determinant is not a unit", None, det)
    alg = Subalgebra(coords, spec, max_steps)
    preimages = []
    inverse_images = {}
    rename = {t: Polynomial.var(alg.ext, v) for t, v in zip(alg.tags, spec.variables)}
    for v in spec.variables:
        cert = alg.membership(spec.var(v))
        if not cert.member:
            return NotCoordinateSystem(f"{v} is not in A[coords]", v, det)
        preimages.append(cert.preimage)
        inverse_images[v] = cert.preimage.substitute(rename, alg.ext).embed(spec.gens)
    result = CoordinateCertificate(coords, Endomorphism(spec, inverse_images), det, tuple(preimages))
    if not result.check():
        raise AssertionError("coordinate certificate failed its own inverse check")
    return result


@dataclass(frozen=True)
class GammaCertificate:
    member: bool
    rank: int
    coordinates: object  # CoordinateCertificate | NotCoordinateSystem
    failing_index: int | None = None

    def __bool__(self):
        return self.member

    def reason(self) -> str:
        if self.member:
            return "ok"
        if not self.coordinates:
            return f"not a coordinate system ({self.coordinates.reason})"
        return f"entry {self.failing_index + 1} is not in ker D"


def in_gamma_D(D: Derivation, coords, r: int, max_steps: int = DEFAULT_MAX_STEPS) -> GammaCertificate:
    """Coordinate system whose first n - r entries are annihilated by D."""
    n = D.spec.n
    if not 0 <= r <= n:
        raise ValueError(f"rank must lie in [0, {n}], got {r}")
    coords = tuple(coords)
    cc = check_coordinate_system(coords, D.spec, max_steps)
    if not cc:
        return GammaCertificate(False, r, cc)
    for i in range(n - r):
        if apply(D, coords[i]):
            return GammaCertificate(False, r, cc, i)
    return GammaCertificate(True, r, cc)


@dataclass(frozen=True)
class Consistent:
    prefix1: tuple
    prefix2: tuple

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NonRigidityCertificate:
    """``element`` (from tuple ``source``) is outside the algebra of the other prefix."""

    element: Polynomial
    source: int
    index: int
    other_prefix: tuple
    base: tuple

    def __bool__(self):
        return False

    def subalgebra_text(self) -> str:
        inner = ",".join(str(g) for g in self.other_prefix)
        if self.base:
            return f"Q[{','.join(self.base)}][{inner}]"
        return f"Q[{inner}]"


def check_rigidity_pair(D: Derivation, c1, c2, r: int, max_steps: int = DEFAULT_MAX_STEPS):
    """Compare A[c1 prefix] and A[c2 prefix] for two members of Gamma_D at rank r."""
    for which, c in ((1, c1), (2, c2)):
        g = in_gamma_D(D, c, r, max_steps)
        if not g:
            raise GammaMembershipFailed(which, g.reason())
    k = D.spec.n - r
    p1, p2 = tuple(c1)[:k], tuple(c2)[:k]
    for source, mine, other in ((2, p2, p1), (1, p1, p2)):
        alg = Subalgebra(other, D.spec, max_steps)
        for i, e in enumerate(mine):
            if not alg.membership(e).member:
                return NonRigidityCertificate(e, source, i, other, D.spec.base)
    return Consistent(p1, p2)


def rank_upper_bound(D: Derivation, coords, max_steps: int = DEFAULT_MAX_STEPS) -> int:
    """n - (length of the longest prefix of coords inside ker D)."""
    cc = check_coordinate_system(coords, D.spec, max_steps)
    if not cc:
        raise NotACoordinateSystemError(cc.reason)
    p = 0
    for c in coords:
        if apply(D, c):
            break
        p += 1
    return D.spec.n - p
