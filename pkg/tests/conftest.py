import pytest

from crnkit import load
from crnkit.netio import parse_network


@pytest.fixture(scope="session")
def mck():
    return load("mckeithan")


@pytest.fixture(scope="session")
def ext():
    return load("extended_mckeithan")


@pytest.fixture(scope="session")
def g1():
    return load("g1")


@pytest.fixture(scope="session")
def g2():
    return load("g2")


@pytest.fixture(scope="session")
def lv():
    return load("lotka_volterra")


@pytest.fixture
def net_from():
    return parse_network


ONES = {"k1": 1, "k2": 1, "k3": 1, "k4": 1}


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
