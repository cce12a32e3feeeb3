"""Monomial orders as sort keys on exponent tuples.

An order is resolved against a concrete generator tuple with
``order.key_for(gens)``; the returned callable maps an exponent tuple to a
flat tuple of ints such that larger keys are larger monomials.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

Key = Callable[[tuple], tuple]

_SIMPLE = ("lex", "degrevlex")


def _lex(exps):
    return exps


def _degrevlex(exps):
    return (sum(exps),) + tuple(-e for e in reversed(exps))


_SIMPLE_KEYS = {"lex": _lex, "degrevlex": _degrevlex}


@dataclass(frozen=True)
class MonomialOrder:
    kind: str = "degrevlex"
    first_block: tuple = ()
    inner: tuple = ("degrevlex", "degrevlex")

    def __post_init__(self):
        if self.kind not in ("lex", "degrevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block":
            if not self.first_block:
                raise ValueError("block order needs a non-empty first block")
            if any(k not in _SIMPLE for k in self.inner):
                raise ValueError(f"inner orders must be lex or degrevlex, got {self.inner}")

    def key_for(self, gens: Sequence[str]) -> Key:
        return _resolve(self, tuple(gens))

    def __str__(self):
        if self.kind == "block":
            return f"block([{','.join(self.first_block)}];{self.inner[0]},{self.inner[1]})"
        return self.kind


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def block(first, inner=("degrevlex", "degrevlex")) -> MonomialOrder:
    """Elimination order: monomials involving ``first`` dominate all others."""
    return MonomialOrder("block", tuple(first), tuple(inner))


@lru_cache(maxsize=256)
def _resolve(order: MonomialOrder, gens: tuple) -> Key:
    if order.kind != "block":
        return lru_cache(maxsize=1 << 16)(_SIMPLE_KEYS[order.kind])
    missing = [n for n in order.first_block if n not in gens]
    if missing:
        raise ValueError(f"block names {missing} not among generators {gens}")
    first = set(order.first_block)
    idx1 = tuple(i for i, g in enumerate(gens) if g in first)
    idx2 = tuple(i for i, g in enumerate(gens) if g not in first)
    k1 = _SIMPLE_KEYS[order.inner[0]]
    k2 = _SIMPLE_KEYS[order.inner[1]]

    @lru_cache(maxsize=1 << 16)
    def key(exps):
        return k1(tuple(exps[i] for i in idx1)) + k2(tuple(exps[i] for i in idx2))

    return key
