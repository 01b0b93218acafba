import pytest

from picard_tau.painleve_vi import PicardParams
from picard_tau.tau_functions import build_tau_grid


@pytest.fixture(scope="session")
def toda_pp():
    return PicardParams(0.3, 0.1)


@pytest.fixture(scope="session")
def base_grid(toda_pp):
    """Closed-form T0, T1 on the 2001-point grid over [0.2, 0.8]."""
    return build_tau_grid(toda_pp, 0.2, 0.8, 2001)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
