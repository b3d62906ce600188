import warnings

import numpy as np
import pytest

from abcdlab.params import ParamWarning, validate

PAPER_CCDF = dict(delta=5, zeta=0.4, s=50, tau=0.6, xi=0.5)
PAPER_COLLISIONS = dict(delta=5, zeta=0.6, s=50, tau=0.9, xi=0.5)
TRIPLES = [(2.1, 1.1), (2.5, 1.5), (2.9, 1.9)]


def make_params(**kw):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ParamWarning)
        return validate(kw)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_params():
    return make_params(n=2**12, gamma=2.5, beta=1.5, seed=3, **PAPER_CCDF)


# acceptance verdicts, echoed in the terminal summary so they survive capture
VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    def record(label: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
        VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
