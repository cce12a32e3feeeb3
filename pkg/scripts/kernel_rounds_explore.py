#!/usr/bin/env python3
"""Watch the kernel-generator closure grow round by round.

For each bundled example this prints how many generators every round adds,
the final verdict, and (when the closure is exhausted but an oracle element
is missing) the witness.  Budgets come from ``lnd.Budgets``.
"""
import argparse

from lnd import Budgets, kernel_generator_rounds
from lnd.rigidity import corpus_files
from lnd.specfile import load


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rounds", type=int, default=Budgets().rounds)
    ap.add_argument("--oracle-degree", type=int, default=Budgets().oracle_degree)
    ap.add_argument("--max-new", type=int, default=Budgets().max_new_per_round)
    args = ap.parse_args()
    budgets = Budgets().with_(rounds=args.rounds, oracle_degree=args.oracle_degree,
                              max_new_per_round=args.max_new)

    for path in corpus_files():
        sf = load(path)
        for name, D in sf.derivations.items():
            res = kernel_generator_rounds(D, **budgets.rounds_kwargs())
            print(f"{path.name} {name}: {'stabilized' if res.stabilized else 'not stabilized'}"
                  f" after {res.rounds} rounds; added per round {list(res.added)}")
            print(f"  {res.reason}")
            for g in res.generators:
                print(f"  generator  {g.format()}")
            if res.witness is not None:
                print(f"  witness    {res.witness.format()}")


if __name__ == "__main__":
    main()
