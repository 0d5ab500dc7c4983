import pytest

import support  # noqa: F401  registers hypothesis profiles
from uca.core import make_model


@pytest.fixture
def e2():
    return make_model(4, [(0, 2), (1, 3)])


@pytest.fixture
def c4():
    return make_model(8, [(0, 3), (2, 5), (4, 7), (6, 1)])


@pytest.fixture
def complete3():
    return make_model(6, [(0, 3), (1, 4), (2, 5)])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
