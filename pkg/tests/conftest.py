import numpy as np
import pytest

from cest.hypergraph import validate_and_build


@pytest.fixture
def sunflower3():
    """The 4-uniform, 10-vertex, 3-edge sunflower given as 1-based rows."""
    return validate_and_build(4, 10, [(1, 2, 3, 4), (1, 5, 6, 7), (1, 8, 9, 10)], one_based=True)


@pytest.fixture
def single_edge():
    return validate_and_build(4, 4, [(0, 1, 2, 3)])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
