import random

import pytest

from unitforms.enumerate import connected_quivers, random_connected_quiver
from unitforms.quivers import Quiver

A1 = Quiver.from_arrows([(1, 2)])
A2 = Quiver.from_arrows([(1, 2), (2, 3)])
A3 = Quiver.from_arrows([(1, 2), (2, 3), (3, 4)])
A1_1 = Quiver.from_arrows([(1, 2), (2, 1)])

# Gamma and Gamma' from the worked example of weak congruence
G_GAMMA = [[2, -5, -2, -2], [-5, 2, 0, 0], [-2, 0, 2, -3], [-2, 0, -3, 2]]
G_GAMMA_P = [[2, -3, 0, 0], [-3, 2, 0, 0], [0, 0, 2, -3], [0, 0, -3, 2]]
B_GAMMA = [[1, 0, 0, 0], [1, 1, 0, 0], [-2, 0, 1, 0], [-2, 0, 0, 1]]


@pytest.fixture(scope="session")
def small_sweep():
    """Every connected loop-less quiver with at most 5 arrows."""
    return list(connected_quivers(5))


@pytest.fixture(scope="session")
def random_sweep():
    rng = random.Random(20240611)
    return [random_connected_quiver(rng, rng.randint(1, 10)) for _ in range(500)]


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
