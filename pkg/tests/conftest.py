import math

import numpy as np
import pytest

from accel_mirror.circuit import MirrorModel

LN2_PI = math.log(2.0) / math.pi

ACCEPTANCE_LINES = []


def constant_mirror(r, phase=0.0):
    """Frequency-independent reflectivity R, built from a flat two-knot table."""
    return MirrorModel.tabulated([(0.0, r), (10.0, r)], phase=phase)


@pytest.fixture
def random_draws():
    rng = np.random.default_rng(2024)
    n = 1000
    return list(zip(rng.uniform(0.01, 5.0, n), rng.uniform(0.0, 1.0, n),
                    rng.uniform(0.0, 2 * math.pi, n)))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
