import pytest
from hypothesis import HealthCheck, settings

from tropres.complex import enumerate_cells
from tropres.pipeline import NONGENERIC_EXAMPLE, RUNNING_EXAMPLE
from tropres.tropical import Arrangement

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def running():
    return Arrangement.from_points(RUNNING_EXAMPLE)


@pytest.fixture(scope="session")
def running_tc(running):
    return enumerate_cells(running)


@pytest.fixture(scope="session")
def nongeneric():
    return Arrangement.from_points(NONGENERIC_EXAMPLE)


@pytest.fixture(scope="session")
def nongeneric_tc(nongeneric):
    return enumerate_cells(nongeneric)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for k in sorted(results):
            terminalreporter.write_line(results[k])
