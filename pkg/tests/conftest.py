import numpy as np
import pytest

from wptsim import RectennaParams

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def unit_params():
    return RectennaParams(k2=1.0, k4=1.0, r_ant=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
