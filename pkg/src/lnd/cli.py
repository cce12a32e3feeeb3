"""``lnd``: command-line front end over derivation spec files.

Exit codes: 0 verified/true, 1 refuted/false (a certificate is printed),
2 unknown or budget exhausted, 3 usage or parse error.  With ``--json`` each
run prints one JSON object with the keys command, verdict, certificate and
budgets.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import __version__
from .automorphism import (NonRigidityCertificate, check_coordinate_system, check_rigidity_pair,
                           exp, in_gamma_D, rank_upper_bound)
from .config import Budgets
from .derivation import apply, certify_lnd, is_irreducible
from .errors import (GammaMembershipFailed, LNDError, NotACoordinateSystemError, NotInKernelError,
                     NotLNDError, ParseError, ResourceError, ZeroDerivationError)
from .groebner import Subalgebra, gcd
from .kernel import kernel_basis_up_to_degree, kernel_generator_rounds
from .rigidity import run_corpus
from .specfile import load

VERIFIED, REFUTED, UNKNOWN, USAGE = 0, 1, 2, 3
_DEFAULTS = Budgets()

VERDICTS = {VERIFIED: "verified", REFUTED: "refuted", UNKNOWN: "unknown", USAGE: "error"}

# JSON Schema for the objects printed under --json.
CERTIFICATE_SCHEMA = {
    "type": "object",
    "required": ["command", "verdict", "certificate", "budgets"],
    "additionalProperties": False,
    "properties": {
        "command": {"type": "string"},
        "verdict": {"enum": sorted(VERDICTS.values())},
        "certificate": {"type": "object"},
        "budgets": {
            "type": "object",
            "additionalProperties": {"type": "integer"},
        },
    },
}


@dataclass
class Result:
    code: int
    lines: list
    certificate: dict = field(default_factory=dict)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _budgets(args) -> dict:
    keys = ("cap", "max_steps", "rounds", "oracle_degree", "slice_cap", "degree")
    names = {"cap": "nilpotency_cap"}
    return {names.get(k, k): getattr(args, k) for k in keys if getattr(args, k, None) is not None}


# ---------------------------------------------------------------------------
# subcommands


def _one_tuple(sf, args):
    if len(args.tuple or []) != 1:
        raise _UsageError("exactly one --tuple is required")
    return args.tuple[0], sf.tuple(args.tuple[0])


def _one_poly(sf, args):
    if len(args.poly or []) != 1:
        raise _UsageError("exactly one --poly is required")
    return sf.poly(args.poly[0])


def cmd_apply(sf, args):
    D = sf.derivation(args.der)
    f = _one_poly(sf, args)
    out = apply(D, f).format()
    return Result(VERIFIED, [out], {"derivation": D.name, "input": f.format(), "image": out})


def cmd_lnd_check(sf, args):
    D = sf.derivation(args.der)
    cert = certify_lnd(D, args.cap)
    steps = cert.steps()
    payload = {"derivation": D.name, "witnesses": steps}
    if cert:
        return Result(VERIFIED, ["witnesses " + " ".join(f"{v}:{s}" for v, s in steps.items())], payload)
    open_vars = [v for v, s in steps.items() if s is None]
    return Result(UNKNOWN, [f"unknown: D^{args.cap} does not vanish on {', '.join(open_vars)}"], payload)


def cmd_exp(sf, args):
    D = sf.derivation(args.der)
    f = _one_poly(sf, args)
    cert = certify_lnd(D, args.cap)
    if not cert:
        return Result(UNKNOWN, [f"unknown: {D.name} not certified within cap {args.cap}"],
                      {"derivation": D.name})
    try:
        phi = exp(D, f, cert)
    except NotInKernelError:
        image = apply(D, f).format()
        return Result(REFUTED, [f"not in ker {D.name}: {D.name}({f.format()}) = {image}"],
                      {"element": f.format(), "image": image})
    images = {v: p.format() for v, p in phi.images.items()}
    return Result(VERIFIED, [f"{v} -> {p}" for v, p in images.items()],
                  {"derivation": D.name, "element": f.format(), "images": images})


def _coords_payload(cc, spec):
    if cc:
        return {"coordinate_system": True,
                "jacobian_det": cc.jacobian_det.format(),
                "inverse": {v: p.format() for v, p in cc.inverse.images.items()}}
    return {"coordinate_system": False, "reason": cc.reason,
            "variable": cc.variable,
            "jacobian_det": None if cc.jacobian_det is None else cc.jacobian_det.format()}


def cmd_coords_check(sf, args):
    name, coords = _one_tuple(sf, args)
    cc = check_coordinate_system(coords, sf.ring, args.max_steps)
    payload = {"tuple": name, **_coords_payload(cc, sf.ring)}
    if cc:
        lines = [f"{name} is a coordinate system"]
        lines += [f"{v} = {p.format()}" for v, p in cc.inverse.images.items()]
        return Result(VERIFIED, lines, payload)
    return Result(REFUTED, [f"{name} is not a coordinate system: {cc.reason}"], payload)


def cmd_gamma_check(sf, args):
    D = sf.derivation(args.der)
    name, coords = _one_tuple(sf, args)
    g = in_gamma_D(D, coords, _rank(args), args.max_steps)
    payload = {"tuple": name, "rank": g.rank, "member": g.member,
               "failing_index": g.failing_index, "reason": g.reason()}
    if g:
        return Result(VERIFIED, [f"{name} in Gamma_{D.name} at rank {g.rank}"], payload)
    return Result(REFUTED, [f"{name} not in Gamma_{D.name} at rank {g.rank}: {g.reason()}"], payload)


def _rank(args):
    if args.rank is None:
        raise _UsageError("--rank is required")
    return args.rank


def cmd_rigid_pair(sf, args):
    D = sf.derivation(args.der)
    if len(args.tuple or []) != 2:
        raise _UsageError("exactly two --tuple options are required")
    (n1, n2), (c1, c2) = args.tuple, [sf.tuple(t) for t in args.tuple]
    r = _rank(args)
    try:
        res = check_rigidity_pair(D, c1, c2, r, args.max_steps)
    except GammaMembershipFailed as e:
        name = (n1, n2)[e.which - 1]
        return Result(REFUTED, [f"{name} not in Gamma_{D.name} at rank {r}: {e.reason}"],
                      {"tuple": name, "reason": e.reason})
    if isinstance(res, NonRigidityCertificate):
        inner = ",".join(sf.label(g) for g in res.other_prefix)
        alg = f"Q[{','.join(res.base)}][{inner}]" if res.base else f"Q[{inner}]"
        text = f"{sf.label(res.element)} not in {alg}"
        return Result(REFUTED, [f"NonRigidityCertificate: {text}"],
                      {"kind": "NonRigidityCertificate",
                       "element": sf.label(res.element),
                       "element_expanded": res.element.format(),
                       "source_tuple": (n1, n2)[res.source - 1],
                       "index": res.index,
                       "subalgebra": alg,
                       "rank": r})
    prefix = ", ".join(sf.label(g) for g in res.prefix1)
    return Result(VERIFIED, [f"consistent: A[{n1} prefix] = A[{n2} prefix] ({prefix})"],
                  {"kind": "Consistent", "rank": r,
                   "prefix1": [g.format() for g in res.prefix1],
                   "prefix2": [g.format() for g in res.prefix2]})


def cmd_rank_bound(sf, args):
    D = sf.derivation(args.der)
    name, coords = _one_tuple(sf, args)
    try:
        bound = rank_upper_bound(D, coords, args.max_steps)
    except NotACoordinateSystemError as e:
        return Result(REFUTED, [f"{name} is not a coordinate system: {e}"], {"tuple": name, "reason": str(e)})
    return Result(VERIFIED, [f"rank {D.name} <= {bound}"], {"tuple": name, "rank_upper_bound": bound})


def cmd_irreducible(sf, args):
    D = sf.derivation(args.der)
    cert = is_irreducible(D, args.max_steps)
    payload = {"derivation": D.name, "irreducible": cert.irreducible, "gcd": cert.gcd.format()}
    if cert.irreducible:
        return Result(VERIFIED, [f"irreducible (gcd of images {cert.gcd.format()})"], payload)
    return Result(REFUTED, [f"reducible: every image is divisible by {cert.gcd.format()}"], payload)


def cmd_kernel_basis(sf, args):
    D = sf.derivation(args.der)
    kb = kernel_basis_up_to_degree(D, args.degree)
    basis = [p.format() for p in kb.basis]
    return Result(VERIFIED, [f"dimension {kb.dimension} (degree <= {args.degree})"] + basis,
                  {"degree": args.degree, "dimension": kb.dimension, "basis": basis})


def cmd_kernel_rounds(sf, args):
    D = sf.derivation(args.der)
    res = kernel_generator_rounds(D, args.rounds, args.oracle_degree, args.slice_cap, args.max_steps)
    gens = [p.format() for p in res.generators]
    payload = {"stabilized": res.stabilized, "rounds": res.rounds, "generators": gens,
               "added_per_round": list(res.added), "reason": res.reason,
               "slice": None if res.slice is None else [res.slice.s.format(), res.slice.a.format()],
               "witness": None if res.witness is None else res.witness.format()}
    head = "stabilized" if res else "not stabilized"
    lines = [f"{head} after {res.rounds} rounds: {res.reason}"] + [f"  {g}" for g in gens]
    if res.witness is not None:
        lines.append(f"witness {res.witness.format()}")
    return Result(VERIFIED if res else UNKNOWN, lines, payload)


def cmd_gcd(sf, args):
    if len(args.poly or []) != 2:
        raise _UsageError("exactly two --poly options are required")
    f, g = (sf.poly(p) for p in args.poly)
    out = gcd(f, g, args.max_steps).format()
    return Result(VERIFIED, [out], {"f": f.format(), "g": g.format(), "gcd": out})


def cmd_member(sf, args):
    f = _one_poly(sf, args)
    name, gens = _one_tuple(sf, args)
    alg = Subalgebra(gens, sf.ring, args.max_steps)
    cert = alg.membership(f)
    tags = {t: sf.label(g) for t, g in zip(alg.tags, gens)}
    payload = {"element": f.format(), "generators": name, "member": cert.member, "tags": tags,
               "preimage": None if cert.preimage is None else cert.preimage.format()}
    inner = ",".join(tags.values())
    text = f"Q[{','.join(sf.ring.base)}][{inner}]" if sf.ring.base else f"Q[{inner}]"
    if cert.member:
        lines = [f"member of {text}", f"preimage {cert.preimage.format()}"]
        lines += [f"  {t} = {g}" for t, g in tags.items()]
        return Result(VERIFIED, lines, payload)
    return Result(REFUTED, [f"{sf.label(f)} not in {text}"], payload)


COMMANDS = {
    "apply": cmd_apply,
    "lnd-check": cmd_lnd_check,
    "exp": cmd_exp,
    "coords-check": cmd_coords_check,
    "gamma-check": cmd_gamma_check,
    "rigid-pair": cmd_rigid_pair,
    "rank-bound": cmd_rank_bound,
    "irreducible": cmd_irreducible,
    "kernel-basis": cmd_kernel_basis,
    "kernel-rounds": cmd_kernel_rounds,
    "gcd": cmd_gcd,
    "member": cmd_member,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lnd", description="Certificates for locally nilpotent derivations.")
    parser.add_argument("--version", action="version", version=f"lnd {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("file", help="derivation spec file")
        p.add_argument("--der", help="derivation name (default: the only one declared)")
        p.add_argument("--poly", action="append", help="binding name or polynomial text")
        p.add_argument("--tuple", action="append", help="tuple binding name or '(p1, ..., pn)'")
        p.add_argument("--rank", type=int)
        p.add_argument("--json", action="store_true", help="print one JSON certificate object")
        p.add_argument("--cap", type=int, default=_DEFAULTS.nilpotency_cap, help="nilpotency cap")
        p.add_argument("--max-steps", type=int, default=_DEFAULTS.max_steps, help="Buchberger step budget")
        if name == "kernel-basis":
            p.add_argument("--degree", type=int, default=2)
        if name == "kernel-rounds":
            p.add_argument("--rounds", type=int, default=_DEFAULTS.rounds)
            p.add_argument("--oracle-degree", type=int, default=_DEFAULTS.oracle_degree)
            p.add_argument("--slice-cap", type=int, default=_DEFAULTS.slice_cap)
    p = sub.add_parser("verify-corpus")
    p.add_argument("paths", nargs="*", help="corpus files or directories (default: bundled corpus)")
    p.add_argument("--json", action="store_true")
    return parser


def _emit(command, result: Result, args, out):
    if getattr(args, "json", False):
        obj = {"command": command, "verdict": VERDICTS[result.code],
               "certificate": result.certificate, "budgets": _budgets(args)}
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        for line in result.lines:
            out.write(line + "\n")


def _verify_corpus(args):
    report = run_corpus(args.paths or None)
    outcomes = [{"item": o.item, "line": o.line, "check": o.check, "args": list(o.args),
                 "expected": o.expected, "observed": o.observed, "provenance": o.tag,
                 "passed": o.passed} for o in report.outcomes]
    lines = report.render().rstrip("\n").split("\n")
    return Result(VERIFIED if report.passed else REFUTED, lines, {"outcomes": outcomes})


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        err.write(f"lnd: error: {e}\n")
        return USAGE
    if args.command is None:
        parser.print_usage(err)
        return USAGE
    try:
        if args.command == "verify-corpus":
            result = _verify_corpus(args)
        else:
            result = COMMANDS[args.command](load(args.file), args)
    except _UsageError as e:
        err.write(f"lnd {args.command}: error: {e}\n")
        return USAGE
    except (ResourceError, NotLNDError) as e:
        result = Result(UNKNOWN, [f"unknown: {e}"], {"error": type(e).__name__, "message": str(e)})
    except (ParseError, ZeroDerivationError, ValueError) as e:
        err.write(f"lnd {args.command}: error: {e}\n")
        return USAGE
    except LNDError as e:
        result = Result(UNKNOWN, [f"unknown: {type(e).__name__}: {e}"],
                        {"error": type(e).__name__, "message": str(e)})
    _emit(args.command, result, args, out)
    return result.code


def main_entry():  # console-script wrapper
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_entry()
