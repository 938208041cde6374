import numpy as np
import pytest

from polydiff import Tolerances


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def tol():
    return Tolerances()


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
