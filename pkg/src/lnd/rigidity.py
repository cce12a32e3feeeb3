"""Instance harnesses for rigidity transfer and triangulability descent, and
the bundled example corpus.

Everything here checks concrete instances: a harness report says what was
observed for the given derivation and tuples, never that a general statement
holds.
"""
from __future__ import annotations

from dataclasses import dataclass
from inspect import signature
from pathlib import Path

from .automorphism import (NonRigidityCertificate, check_coordinate_system, check_rigidity_pair,
                           in_gamma_D, rank_upper_bound)
from .derivation import (Derivation, apply, certify_lnd, is_irreducible,
                         is_irreducible_over_fraction_field, is_triangular_in)
from .errors import LNDError, NotACoordinateSystemError, NotInKernelError, ParseError
from .groebner import DEFAULT_MAX_STEPS, Subalgebra, subalgebra_equal
from .kernel import (LocalSlice, dixmier_image, find_local_slice, kernel_basis_up_to_degree,
                     kernel_generator_rounds)
from .linalg import solve
from .specfile import SpecFile, load

CORPUS_DIR = Path(__file__).with_name("corpus")


# ---------------------------------------------------------------------------
# harnesses


def fraction_field_slice(D: Derivation, degree_cap: int = 3):
    """A local slice (s, a) with a a nonzero element of A, or None.

    Over K = Frac(A) such an a is a unit, so s/a is a slice of D_K and
    D_K has rank 1.
    """
    sl = find_local_slice(D, degree_cap, accept=D.spec.in_base)
    return sl if sl else None


@dataclass(frozen=True)
class TransferReport:
    rank: int
    verdicts: tuple  # one Consistent or NonRigidityCertificate per pair
    k_slice: LocalSlice | None
    k_rank: int | None

    @property
    def non_rigid(self) -> bool:
        return any(isinstance(v, NonRigidityCertificate) for v in self.verdicts)

    @property
    def rank_hypothesis_violated(self) -> bool | None:
        """rank D != rank D_K on this instance (None when rank D_K is unknown)."""
        return None if self.k_rank is None else self.k_rank != self.rank

    def summary(self, label=str) -> str:
        if self.non_rigid:
            cert = next(v for v in self.verdicts if isinstance(v, NonRigidityCertificate))
            head = f"non-rigid ({label(cert.element)} not in {_algebra_text(cert, label)})"
        else:
            head = "consistent"
        if self.k_slice is None:
            return f"{head}; rank of D_K undetermined"
        tail = f"K-slice ({label(self.k_slice.s)})/({label(self.k_slice.a)}) gives rank D_K = 1"
        if self.rank_hypothesis_violated:
            return f"{head}; rank hypothesis violated: {tail} while r = {self.rank}"
        return f"{head}; {tail}"


def _algebra_text(cert: NonRigidityCertificate, label=str) -> str:
    inner = ",".join(label(g) for g in cert.other_prefix)
    return f"Q[{','.join(cert.base)}][{inner}]" if cert.base else f"Q[{inner}]"


def rigidity_transfer_harness(D: Derivation, pairs, r: int,
                              max_steps: int = DEFAULT_MAX_STEPS) -> TransferReport:
    """Compare Gamma_D pairs over A and look for the rank of D_K.

    Non-rigidity of D over A can only coexist with rigidity of D_K when the
    ranks differ, so every NonRigidityCertificate is reported together with
    whatever is known about rank D_K: a local slice with D(s) in A \\ 0
    certifies rank D_K = 1.
    """
    verdicts = tuple(check_rigidity_pair(D, c1, c2, r, max_steps) for c1, c2 in pairs)
    sl = fraction_field_slice(D)
    return TransferReport(r, verdicts, sl, 1 if sl else None)


@dataclass(frozen=True)
class DescentReport:
    triangular: bool
    first_in_kernel: bool
    local_slice: LocalSlice | None  # (X', D X') when the first coordinate escapes ker D
    same_algebra: bool  # A[x] = A[X']
    k_slice: LocalSlice | None
    rank: int | None

    @property
    def passed(self) -> bool:
        return self.triangular and self.first_in_kernel and self.same_algebra

    @property
    def rank_hypothesis_violated(self) -> bool | None:
        if self.rank is None or self.k_slice is None:
            return None
        return self.rank != 1

    def summary(self, label=str) -> str:
        parts = ["triangular" if self.triangular else "not triangular"]
        if self.local_slice is not None:
            parts.append(f"first coordinate escapes ker D: local slice "
                         f"({label(self.local_slice.s)}, {label(self.local_slice.a)})")
        else:
            parts.append("first coordinate in ker D")
        parts.append("A[x] = A[X']" if self.same_algebra else "A[x] != A[X']")
        if self.rank_hypothesis_violated:
            parts.append(f"rank hypothesis violated: rank D_K = 1 while rank D = {self.rank}")
        return "; ".join(parts)


def triangulability_descent_harness(D: Derivation, triangular_coords, x_name: str,
                                    rank: int | None = None,
                                    max_steps: int = DEFAULT_MAX_STEPS) -> DescentReport:
    """Observable steps of descending triangulability from A[x] to A.

    For an A-triangular coordinate system (X', ...) and x with D x = 0 the
    argument needs D X' = 0 and A[x] = A[X'].  If instead D X' = a != 0 then
    (X', a) is a local slice, the situation that forces rank D_K = 1.
    """
    spec = D.spec
    coords = tuple(triangular_coords)
    if not check_coordinate_system(coords, spec, max_steps):
        raise NotACoordinateSystemError("triangular_coords is not a coordinate system")
    x = spec.var(x_name)
    if apply(D, x):
        raise NotInKernelError(f"D({x_name}) != 0")
    tri = is_triangular_in(D, coords, max_steps)
    first = coords[0]
    a = apply(D, first)
    local = LocalSlice(first, a) if a and not apply(D, a) else None
    same = subalgebra_equal((x,), (first,), spec, max_steps)
    sl = fraction_field_slice(D)
    return DescentReport(tri, not a, local, same, sl, rank)


# ---------------------------------------------------------------------------
# corpus


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer, got {text!r}") from None


def _render_rigid(sf, cert):
    if isinstance(cert, NonRigidityCertificate):
        return f"{sf.label(cert.element)} not in {_algebra_text(cert, sf.label)}"
    return "consistent"


def _check_apply(sf, d, p):
    return apply(sf.derivation(d), sf.poly(p)).format()


def _check_lnd(sf, d):
    cert = certify_lnd(sf.derivation(d))
    if not cert:
        return "unknown"
    return " ".join(f"{v}:{s}" for v, s in cert.steps().items())


def _check_coords(sf, t):
    return "certified" if check_coordinate_system(sf.tuple(t), sf.ring) else "refuted"


def _check_gamma(sf, d, t, r):
    g = in_gamma_D(sf.derivation(d), sf.tuple(t), _int(r))
    return "member" if g else f"not member: {g.reason()}"


def _check_rigid_pair(sf, d, t1, t2, r):
    return _render_rigid(sf, check_rigidity_pair(sf.derivation(d), sf.tuple(t1), sf.tuple(t2), _int(r)))


def _check_triangular(sf, d, t):
    return str(is_triangular_in(sf.derivation(d), sf.tuple(t))).lower()


def _check_irreducible(sf, d):
    return str(is_irreducible(sf.derivation(d)).irreducible).lower()


def _check_irreducible_k(sf, d):
    return str(is_irreducible_over_fraction_field(sf.derivation(d))).lower()


def _check_rank_bound(sf, d, t):
    return str(rank_upper_bound(sf.derivation(d), sf.tuple(t)))


def _check_kernel_dim(sf, d, deg):
    return str(kernel_basis_up_to_degree(sf.derivation(d), _int(deg)).dimension)


def _check_kernel_contains(sf, d, deg, p):
    basis = kernel_basis_up_to_degree(sf.derivation(d), _int(deg)).basis
    target = sf.poly(p)
    return str(solve([b.terms for b in basis], target.terms) is not None).lower()


def _check_slice(sf, d):
    sl = find_local_slice(sf.derivation(d))
    return f"({sf.label(sl.s)}, {sf.label(sl.a)})" if sl else "none"


def _check_kernel_rounds(sf, d, rounds):
    res = kernel_generator_rounds(sf.derivation(d), _int(rounds))
    return "stabilized" if res else "non-stabilized"


def _check_kernel_generators(sf, d, rounds, *ps):
    D = sf.derivation(d)
    res = kernel_generator_rounds(D, _int(rounds))
    if not res:
        return "non-stabilized"
    return "equal" if subalgebra_equal(res.generators, [sf.poly(p) for p in ps], D.spec) else "different"


def _check_dixmier(sf, d, p):
    D = sf.derivation(d)
    sl = find_local_slice(D)
    if not sl:
        return "no slice"
    img = dixmier_image(D, sl, sf.poly(p))
    return f"{img.numerator.format()} / a^{img.a_power}"


def _check_member(sf, p, t):
    alg = Subalgebra(sf.tuple(t), sf.ring)
    return "member" if alg.membership(sf.poly(p)).member else "not member"


def _check_transfer(sf, d, t1, t2, r):
    rep = rigidity_transfer_harness(sf.derivation(d), [(sf.tuple(t1), sf.tuple(t2))], _int(r))
    return rep.summary(sf.label)


def _check_descent(sf, d, t, x, rank=None):
    rep = triangulability_descent_harness(sf.derivation(d), sf.tuple(t), x,
                                          None if rank is None else _int(rank))
    return rep.summary(sf.label)


CHECKS = {
    "apply": _check_apply,
    "lnd": _check_lnd,
    "coords": _check_coords,
    "gamma": _check_gamma,
    "rigid-pair": _check_rigid_pair,
    "triangular": _check_triangular,
    "irreducible": _check_irreducible,
    "irreducible-k": _check_irreducible_k,
    "rank-bound": _check_rank_bound,
    "kernel-dim": _check_kernel_dim,
    "kernel-contains": _check_kernel_contains,
    "slice": _check_slice,
    "kernel-rounds": _check_kernel_rounds,
    "kernel-generators": _check_kernel_generators,
    "dixmier": _check_dixmier,
    "member": _check_member,
    "rigidity-transfer": _check_transfer,
    "triangulability-descent": _check_descent,
}


@dataclass(frozen=True)
class Outcome:
    item: str
    line: int
    check: str
    args: tuple
    expected: str
    observed: str
    tag: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        head = f"{status} {self.item}:{self.line} {' '.join((self.check,) + self.args)} => {self.observed} {self.tag}"
        return head if self.passed else f"{head} (expected {self.expected})"


@dataclass(frozen=True)
class CorpusReport:
    outcomes: tuple

    @property
    def passed(self) -> bool:
        return all(o.passed for o in self.outcomes)

    def render(self) -> str:
        lines = [o.render() for o in self.outcomes]
        n_ok = sum(o.passed for o in self.outcomes)
        lines.append(f"{n_ok}/{len(self.outcomes)} expectations passed")
        return "\n".join(lines) + "\n"


def run_item(sf: SpecFile) -> list:
    out = []
    for e in sf.expectations:
        fn = CHECKS.get(e.check)
        if fn is None:
            observed = f"error: unknown check {e.check!r}"
        else:
            try:
                signature(fn).bind(sf, *e.args)
            except TypeError:
                observed = f"error: wrong number of arguments for {e.check}"
            else:
                observed = _observe(fn, sf, e.args)
        out.append(Outcome(sf.name, e.line, e.check, e.args, e.expected, observed, e.tag()))
    return out


def _observe(fn, sf, args):
    try:
        return fn(sf, *args)
    except LNDError as exc:
        return f"error: {type(exc).__name__}: {exc}"


def corpus_files(directory=None) -> list:
    directory = CORPUS_DIR if directory is None else Path(directory)
    return sorted(directory.glob("*.lnd"))


def run_corpus(paths=None) -> CorpusReport:
    """Run every expectation of every corpus file (default: the bundled corpus).

    ``paths`` may mix files and directories; items run in file-name order.
    """
    if paths is None:
        files = corpus_files()
    else:
        files = []
        for p in map(Path, paths):
            files.extend(corpus_files(p) if p.is_dir() else [p])
    outcomes = []
    for f in files:
        outcomes.extend(run_item(load(f)))
    return CorpusReport(tuple(outcomes))
