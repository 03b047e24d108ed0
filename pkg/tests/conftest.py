from __future__ import annotations

import pytest

from heightfilter.cli import grid

ACCEPTANCE: dict[int, str] = {}


@pytest.fixture(scope="session")
def full_grid():
    return grid(list("ABCDEFG"), None, None)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
