#!/usr/bin/env python3
"""Time Buchberger on seeded random ideals and report basis sizes."""
import argparse
import random
import statistics
import time

from lnd import DEGREVLEX, LEX, RingSpec, buchberger, verify_groebner
from lnd.errors import ResourceError


def random_generator(rng, spec, degree, terms):
    f = spec.zero()
    for _ in range(terms):
        m = spec.const(rng.randint(-3, 3))
        for _ in range(rng.randint(1, degree)):
            m = m * spec.var(rng.choice(spec.gens))
        f = f + m
    return f if f else spec.var(spec.gens[0])


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--gens", type=int, default=3, help="generators per ideal")
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--terms", type=int, default=3)
    ap.add_argument("--max-steps", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    spec = RingSpec((), ("X", "Y", "Z"))
    for name, order in (("degrevlex", DEGREVLEX), ("lex", LEX)):
        rng = random.Random(args.seed)
        times, sizes, gave_up = [], [], 0
        for _ in range(args.instances):
            gens = [random_generator(rng, spec, args.degree, args.terms) for _ in range(args.gens)]
            t0 = time.perf_counter()
            try:
                G = buchberger(gens, order, max_steps=args.max_steps)
            except ResourceError:
                gave_up += 1
                continue
            times.append(time.perf_counter() - t0)
            sizes.append(len(G))
            assert verify_groebner(G)
        if times:
            print(f"{name:9s} median {statistics.median(times) * 1e3:8.1f} ms  "
                  f"max {max(times) * 1e3:8.1f} ms  mean size {statistics.mean(sizes):5.1f}  "
                  f"budget exceeded {gave_up}/{args.instances}")
        else:
            print(f"{name:9s} budget exceeded on every instance")


if __name__ == "__main__":
    main()
