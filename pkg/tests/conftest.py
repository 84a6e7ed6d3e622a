from functools import lru_cache

import pytest

from quadsat.field import field_of_order
from quadsat.geometry import ProjectiveSpace3
from quadsat.quadric import EllipticQuadric


@lru_cache(maxsize=None)
def space_of(q):
    return ProjectiveSpace3(field_of_order(q))


@lru_cache(maxsize=None)
def quadric_of(q):
    return EllipticQuadric(space_of(q))


@pytest.fixture
def space():
    return space_of


@pytest.fixture
def quadric():
    return quadric_of


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
