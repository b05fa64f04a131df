import pytest

from spechtvertex.young import Partition, t_star

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def shape_5522():
    """(5^2,2^4) and its most dominant tableau."""
    lam = Partition((5, 5, 2, 2, 2, 2))
    return lam, t_star(lam)


@pytest.fixture
def shape_6633():
    lam = Partition((6, 6, 6, 3, 3, 3, 3, 3, 3))
    return lam, t_star(lam)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
