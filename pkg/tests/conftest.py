from functools import lru_cache

import pytest

from coxshadow.core import CoxeterGroup, parse_system
from coxshadow.verify import Context

INF_DIHEDRAL = "rank 2; m 1 2 = inf"
# bonds (m12, m23, m13) drawn once from {2,3,4,5,inf} with random.Random(20240607)
RANDOM_RANK3 = "rank 3; m 1 2 = inf; m 2 3 = 5; m 1 3 = inf"


@lru_cache(maxsize=None)
def context(name: str) -> Context:
    return Context(parse_system(name))


@lru_cache(maxsize=None)
def group(name: str) -> CoxeterGroup:
    return context(name).W


@pytest.fixture
def ctx():
    return context


@pytest.fixture
def grp():
    return group


# one line per acceptance criterion, filled in by test_acceptance and shown after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
