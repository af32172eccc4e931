import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

from oracle import BruteGroup  # noqa: E402


def brute(G):
    """Oracle view of a package group through its multiplication alone."""
    return BruteGroup(range(G.order), G.mul, 0)


def members(S):
    return frozenset(int(x) for x in S)


@pytest.fixture(scope="session")
def s4():
    from grouplogic.kernel import symmetric

    return symmetric(4)


@pytest.fixture(scope="session")
def s5():
    from grouplogic.kernel import symmetric

    return symmetric(5)


@pytest.fixture(scope="session")
def a5():
    from grouplogic.kernel import alternating

    return alternating(5)


# one summary line per acceptance criterion, shown at the end of the run
CRITERIA: dict = {}


@pytest.fixture
def criterion():
    def report(k, ok, detail=""):
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'} {detail}".rstrip()
        CRITERIA[k] = line
        print(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for k in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[k])
