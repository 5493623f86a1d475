import numpy as np
import pytest
from hypothesis import strategies as st

from genvar.funcspace import SampledFunction


def random_grid(rng, n, uniform=False, lo=-1.0, hi=1.0):
    if uniform:
        xs = np.linspace(0.0, 1.0, n)
    else:
        xs = np.concatenate(([0.0], np.cumsum(rng.uniform(0.05, 1.0, n - 1))))
    return SampledFunction(xs, rng.uniform(lo, hi, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def sampled_functions(draw, min_size=2, max_size=12, uniform=False):
    n = draw(st.integers(min_size, max_size))
    ys = draw(st.lists(st.floats(-10, 10, allow_nan=False, allow_infinity=False),
                       min_size=n, max_size=n))
    if uniform:
        xs = np.linspace(0.0, 1.0, n)
    else:
        gaps = draw(st.lists(st.floats(0.01, 2.0), min_size=n - 1, max_size=n - 1))
        xs = np.concatenate(([0.0], np.cumsum(gaps)))
    return SampledFunction(xs, np.array(ys))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
