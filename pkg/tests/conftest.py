import numpy as np
import pytest

from qmono.linalg import DensityMatrix
from qmono.states import GHZ, W, bell_phi_plus


def dm(m):
    return DensityMatrix(np.asarray(m, dtype=complex))


@pytest.fixture
def bell():
    return bell_phi_plus().density_matrix()


@pytest.fixture
def ghz():
    return GHZ


@pytest.fixture
def w_state():
    return W


@pytest.fixture
def product_ab():
    # rho_A (x) sigma_B with both factors mixed and non-diagonal
    a = np.array([[0.7, 0.2 - 0.1j], [0.2 + 0.1j, 0.3]])
    b = np.array([[0.4, 0.1j], [-0.1j, 0.6]])
    return dm(np.kron(a, b)), dm(a), dm(b)


@pytest.fixture
def classical_ghz_mixture():
    m = np.zeros((8, 8))
    m[0, 0] = m[7, 7] = 0.5
    return dm(m)


# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":").split("-")[0])):
            terminalreporter.write_line(line)
