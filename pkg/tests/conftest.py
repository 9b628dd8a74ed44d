import pytest

from orderlab import bundled_field, order_z_plus_ideal, split_prime
from orderlab.ideals import ideal_pow

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sqrt2():
    return bundled_field("Q-sqrt2")


@pytest.fixture(scope="session")
def eisenstein():
    return bundled_field("Q-sqrt-3")


@pytest.fixture(scope="session")
def cubic():
    return bundled_field("cubic")


@pytest.fixture(scope="session")
def cubic_setup(cubic):
    Q, P = split_prime(3, cubic)
    R = order_z_plus_ideal(cubic, ideal_pow(P, 2))
    R1 = order_z_plus_ideal(cubic, P)
    return {"K": cubic, "Q": Q, "P": P, "R": R, "R1": R1, "beta": cubic.parse("2-4a+a^2")}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
