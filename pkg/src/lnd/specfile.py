"""Line-oriented derivation spec files.

    # comments run to the end of the line
    ring Q[X][T,Y,Z]            (or ``ring Q[Y,Z]`` for A = Q)
    der D: Y -> X, Z -> Y       (omitted variables map to 0)
    poly T' = T - Y^2 + 2*X*Z   (earlier bindings may be used)
    tuple t2 = (T', Y, Z)
    expect rigid-pair D t1 t2 2 => T' not in Q[X][T]  [published]

``expect`` lines record a check, its arguments (binding names, derivation
names or integers), the expected rendered result and a provenance tag:
``[published]``, ``[trivial]`` or ``[derived: <oracle>]``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .derivation import Derivation
from .errors import ParseError
from .poly import Polynomial, RingSpec, parse

PROVENANCE = ("published", "trivial", "derived")

_NAME = r"[A-Za-z_][A-Za-z0-9_']*"
_RING = re.compile(r"ring\s+Q\[([^\]]*)\](?:\[([^\]]*)\])?\s*\Z")
_DER = re.compile(rf"der\s+({_NAME})\s*:(.*)\Z")
_POLY = re.compile(rf"poly\s+({_NAME})\s*=(.*)\Z")
_TUPLE = re.compile(rf"tuple\s+({_NAME})\s*=\s*\((.*)\)\s*\Z")
_EXPECT = re.compile(r"expect\s+([a-z][a-z-]*)((?:\s+\S+)*?)\s*=>\s*(.*?)\s*\[([^\]]*)\]\s*\Z")
_MAPS = re.compile(rf"\s*({_NAME})\s*->(.*)\Z", re.S)


@dataclass(frozen=True)
class Expectation:
    check: str
    args: tuple
    expected: str
    provenance: str
    oracle: str | None = None
    line: int = 0

    def tag(self) -> str:
        return f"[{self.provenance}: {self.oracle}]" if self.oracle else f"[{self.provenance}]"

    def describe(self) -> str:
        return " ".join((self.check,) + self.args)


@dataclass
class SpecFile:
    ring: RingSpec
    derivations: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    tuples: dict = field(default_factory=dict)
    expectations: list = field(default_factory=list)
    name: str = "<string>"

    def derivation(self, name: str | None = None) -> Derivation:
        if name is None:
            if len(self.derivations) != 1:
                raise ParseError(f"{self.name}: {len(self.derivations)} derivations declared; "
                                 "name one explicitly")
            return next(iter(self.derivations.values()))
        if name not in self.derivations:
            raise ParseError(f"{self.name}: no derivation named {name!r}")
        return self.derivations[name]

    def poly(self, text: str) -> Polynomial:
        """A binding name or inline polynomial text over the ring."""
        text = text.strip()
        if text in self.polys:
            return self.polys[text]
        return parse(text, self.ring, self.polys)

    def tuple(self, text: str) -> tuple:
        """A tuple binding name or inline ``(p1, ..., pn)``."""
        text = text.strip()
        if text in self.tuples:
            return self.tuples[text]
        if text.startswith("(") and text.endswith(")"):
            return tuple(self.poly(p) for p in _split_commas(text[1:-1]))
        raise ParseError(f"{self.name}: no tuple named {text!r}")

    def label(self, p: Polynomial) -> str:
        """Generators print as themselves, then binding names, then the expansion."""
        if len(p) == 1 and p.degree() == 1 and p.coefficient(next(iter(p.terms))) == 1:
            return p.format()
        for name, q in self.polys.items():
            if q == p:
                return name
        return p.format()


def _split_commas(text: str) -> list:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    if any(not p.strip() for p in parts):
        raise ParseError(f"empty entry in list {text!r}")
    return [p.strip() for p in parts]


def _names(block: str | None) -> tuple:
    if block is None or not block.strip():
        return ()
    return tuple(n.strip() for n in block.split(","))


def _provenance(tag: str, where: str):
    head, _, rest = tag.partition(":")
    head, rest = head.strip(), rest.strip()
    if head not in PROVENANCE:
        raise ParseError(f"{where}: provenance must be one of {', '.join(PROVENANCE)}, got {head!r}")
    if head == "derived" and not rest:
        raise ParseError(f"{where}: derived expectations must name their oracle")
    if head != "derived" and rest:
        raise ParseError(f"{where}: only derived expectations take an oracle")
    return head, rest or None


def loads(text: str, name: str = "<string>") -> SpecFile:
    spec = None
    out = None
    taken: set = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{name}:{lineno}"
        try:
            if line.startswith("ring"):
                m = _RING.match(line)
                if not m:
                    raise ParseError("malformed ring declaration")
                if spec is not None:
                    raise ParseError("more than one ring declaration")
                first, second = _names(m.group(1)), _names(m.group(2))
                try:
                    spec = RingSpec(first, second) if m.group(2) is not None else RingSpec((), first)
                except ValueError as e:
                    raise ParseError(str(e)) from None
                out = SpecFile(spec, name=name)
                continue
            if spec is None:
                raise ParseError("the ring must be declared first")
            kind = line.split(None, 1)[0]
            if kind == "der":
                m = _DER.match(line)
                if not m:
                    raise ParseError("malformed derivation declaration")
                dname, body = m.group(1), m.group(2)
                images = {}
                if body.strip():
                    for item in _split_commas(body):
                        mm = _MAPS.match(item)
                        if not mm:
                            raise ParseError(f"expected '<var> -> <poly>', got {item!r}")
                        v = mm.group(1)
                        if v not in spec.variables:
                            raise ParseError(f"{v!r} is not a derivation variable of {spec}")
                        if v in images:
                            raise ParseError(f"image of {v} given twice")
                        images[v] = parse(mm.group(2), spec, out.polys)
                _claim(dname, taken, spec)
                out.derivations[dname] = Derivation(spec, images, dname)
            elif kind == "poly":
                m = _POLY.match(line)
                if not m:
                    raise ParseError("malformed poly binding")
                _claim(m.group(1), taken, spec)
                out.polys[m.group(1)] = parse(m.group(2), spec, out.polys)
            elif kind == "tuple":
                m = _TUPLE.match(line)
                if not m:
                    raise ParseError("malformed tuple binding")
                _claim(m.group(1), taken, spec)
                out.tuples[m.group(1)] = tuple(parse(p, spec, out.polys)
                                               for p in _split_commas(m.group(2)))
            elif kind == "expect":
                m = _EXPECT.match(line)
                if not m:
                    raise ParseError("malformed expectation (want: expect <check> <args> => <result> [<tag>])")
                prov, oracle = _provenance(m.group(4), where)
                out.expectations.append(Expectation(m.group(1), tuple(m.group(2).split()),
                                                    m.group(3), prov, oracle, lineno))
            else:
                raise ParseError(f"unknown declaration {kind!r}")
        except ParseError as e:
            msg = str(e)
            raise ParseError(msg if msg.startswith(name) else f"{where}: {msg}") from None
    if out is None:
        raise ParseError(f"{name}: no ring declaration")
    return out


def _claim(name, taken, spec):
    if name in taken or name in spec.gens:
        raise ParseError(f"name {name!r} is already in use")
    taken.add(name)


def load(path) -> SpecFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return loads(text, path.name)
