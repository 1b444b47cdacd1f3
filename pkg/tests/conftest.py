import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_field(grid, rng, kmax=6, amp=1.0, zero_mean=True):
    """Smooth real field with random coefficients on modes ``1..kmax``."""
    c = np.zeros(grid.n // 2 + 1, dtype=complex)
    c[1 : kmax + 1] = rng.normal(size=kmax) + 1j * rng.normal(size=kmax)
    if not zero_mean:
        c[0] = rng.normal()
    return amp * grid.to_physical(c)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
