import numpy as np
import pytest

from cghz.statevec import StateVector

ACCEPTANCE_LINES = []


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary."""

    def record(name, passed, detail=""):
        ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_state(n, rng):
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return StateVector(n, amps / np.linalg.norm(amps))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
