import os

import pytest

from ngraph.builders import example

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
GOLDEN = os.path.join(os.path.dirname(__file__), "golden")

ACCEPTANCE_LINES = []


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture(params=["E1", "E2", "E3", "E4", "E4p", "E5"])
def any_example(request):
    return example(request.param)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
