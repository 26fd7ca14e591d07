import pytest

from nosehoover import experiments as ex

# one line per acceptance check, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def record(criterion: int, label: str, value, threshold: str, passed: bool) -> bool:
    ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'} criterion {criterion:>2} "
                            f"{label}: value={value} required {threshold}")
    return passed


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def pendulum_quad_table():
    """Cheap pendulum table (k0 from loop integrals) for unit tests."""
    return ex.pendulum_table("quadrature")


@pytest.fixture(scope="session")
def pendulum_time_table():
    """The 40-node table with time-averaged k0 (about 80 s to build)."""
    return ex.pendulum_table("time")


@pytest.fixture(scope="session")
def radial_time_table():
    return ex.radial_table("time")
