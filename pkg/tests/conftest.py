import numpy as np
import pytest

from ccr_forge import SystemConfig

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def quarter():
    """The reference system l = 1, mu = 1, gamma = pi/4."""
    return SystemConfig(l=1.0, mu=1.0, gamma=np.pi / 4, K=8)


def random_hermitian(n, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (A + A.conj().T)
