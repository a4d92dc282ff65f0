import numpy as np
import pytest

from trisym.cycle_geom import LinearCycle
from trisym.hk_core import standard_frame

ACCEPTANCE_LINES = []


def basis(dim):
    return np.eye(dim)


@pytest.fixture
def t4():
    return standard_frame(1)


@pytest.fixture
def t8():
    return standard_frame(2)


@pytest.fixture
def canonical():
    """The named cycles used throughout: (cycle, frame) pairs."""
    e4, e8 = np.eye(4), np.eye(8)
    f1, f2 = standard_frame(1), standard_frame(2)
    return {
        "Z1": (LinearCycle([e4[0], e4[1]], "Z1"), f1),
        "Z3": (LinearCycle([e4[0], e4[1] + e4[2]], "Z3"), f1),
        "Q": (LinearCycle(e8[:4], "Q"), f2),
        "P": (LinearCycle([e8[0], e8[4]], "P"), f2),
    }


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
