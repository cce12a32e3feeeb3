from pathlib import Path

import pytest
from hypothesis import strategies as st

from lnd import Polynomial, RingSpec
from lnd.specfile import load

CORPUS = Path(__file__).resolve().parents[1] / "src" / "lnd" / "corpus"

# lines printed by tests/test_acceptance.py, echoed in the terminal summary
ACCEPTANCE_LINES: list = []


def corpus(name):
    return load(CORPUS / name)


@pytest.fixture(scope="session")
def nonrigid():
    return corpus("triangular_nonrigid.lnd")


@pytest.fixture(scope="session")
def plane():
    return corpus("plane_rank2.lnd")


@pytest.fixture(scope="session")
def five():
    return corpus("five_dim_rank3.lnd")


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def polynomials(gens, max_exp=2, max_terms=4):
    gens = tuple(gens)
    monos = st.tuples(*[st.integers(0, max_exp) for _ in gens])
    return st.dictionaries(monos, coefficients, max_size=max_terms).map(
        lambda d: Polynomial(gens, d))


def base_elements(spec: RingSpec, max_exp=2, max_terms=3):
    """Polynomials in the base generators only (elements of A)."""
    idx = [spec.gens.index(b) for b in spec.base]
    n = len(spec.gens)

    def embed(d):
        out = {}
        for exps, c in d.items():
            e = [0] * n
            for i, k in zip(idx, exps):
                e[i] = k
            out[tuple(e)] = c
        return Polynomial(spec.gens, out)

    monos = st.tuples(*[st.integers(0, max_exp) for _ in idx])
    return st.dictionaries(monos, coefficients, max_size=max_terms).map(embed)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

