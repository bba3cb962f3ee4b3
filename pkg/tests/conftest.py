from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from valueshare.fixtures import (  # noqa: E402
    super_complement_game,
    triple_with_null_game,
    two_triples_game,
    zero_game,
)

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def g1():
    return super_complement_game()


@pytest.fixture
def g3():
    return two_triples_game()


@pytest.fixture
def g2():
    return triple_with_null_game()


@pytest.fixture
def zero3():
    return zero_game("ABC")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
