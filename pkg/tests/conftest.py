import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from anncat import make_cyclic_ring, make_product_ring, regular_bimodule

settings.register_profile("repo", deadline=None, derandomize=True, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def z2():
    R = make_cyclic_ring(2)
    return R, regular_bimodule(R)


@pytest.fixture(scope="session")
def z3():
    R = make_cyclic_ring(3)
    return R, regular_bimodule(R)


@pytest.fixture(scope="session")
def z4():
    R = make_cyclic_ring(4)
    return R, regular_bimodule(R)


@pytest.fixture(scope="session")
def v4():
    R = make_product_ring(make_cyclic_ring(2), make_cyclic_ring(2))
    return R, regular_bimodule(R)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
