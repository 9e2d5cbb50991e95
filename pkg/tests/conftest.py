from __future__ import annotations

import pytest

from artifact.suites import Instance

ACCEPTANCE_LINES: list[str] = []

_instances: dict = {}


def instance(labels: str) -> Instance:
    inst = _instances.get(labels)
    if inst is None:
        inst = _instances[labels] = Instance(labels)
    return inst


@pytest.fixture(scope="session")
def i334():
    return instance("3,3,4")


@pytest.fixture(scope="session")
def i23inf():
    return instance("2,3,inf")


@pytest.fixture(scope="session")
def i237():
    return instance("2,3,7")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
