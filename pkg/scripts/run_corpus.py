#!/usr/bin/env python3
"""Run every expectation in one or more spec files and print the report.

    python scripts/run_corpus.py                 # bundled corpus
    python scripts/run_corpus.py my_examples/    # a directory of .lnd files
"""
import argparse
import sys
import time

from lnd import run_corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("paths", nargs="*")
    ap.add_argument("--only-failures", action="store_true")
    args = ap.parse_args()
    t0 = time.perf_counter()
    report = run_corpus(args.paths or None)
    for o in report.outcomes:
        if not (args.only_failures and o.passed):
            print(o.render())
    n_pass = sum(o.passed for o in report.outcomes)
    print(f"{n_pass}/{len(report.outcomes)} expectations passed in {time.perf_counter() - t0:.2f}s")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
