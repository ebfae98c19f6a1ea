import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from smlab.catalog import default_catalog  # noqa: E402


@pytest.fixture(scope="session")
def std():
    return default_catalog("standard")


@pytest.fixture(scope="session")
def minimal():
    return default_catalog("minimal")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
