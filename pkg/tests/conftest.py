"""Shared fixtures and the acceptance-criteria summary hook."""

import pytest
from hypothesis import HealthCheck, settings

from kklab import (
    Graph,
    bowtie_graph,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    star_graph,
)

settings.register_profile(
    "suite",
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


# criterion number -> (passed, one-line detail); printed after the run
_CRITERIA: dict = {}


def record_criterion(num: int, ok: bool, detail: str) -> None:
    _CRITERIA[num] = (bool(ok), detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria")
    for num in sorted(_CRITERIA):
        ok, detail = _CRITERIA[num]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} - {detail}")


@pytest.fixture(scope="session")
def triangle() -> Graph:
    return complete_graph(3)


@pytest.fixture(scope="session")
def k4() -> Graph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def c4() -> Graph:
    return cycle_graph(4)


@pytest.fixture(scope="session")
def p3() -> Graph:
    return path_graph(3)


@pytest.fixture(scope="session")
def bowtie() -> Graph:
    return bowtie_graph()


@pytest.fixture(scope="session")
def petersen() -> Graph:
    return petersen_graph()


@pytest.fixture(scope="session")
def star4() -> Graph:
    return star_graph(4)
