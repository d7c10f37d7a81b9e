from fractions import Fraction

import pytest

from ternalg import QQ, GF, catalog


@pytest.fixture(params=["QQ", "GF5", "GF7"])
def field(request):
    return {"QQ": QQ, "GF5": GF(5), "GF7": GF(7)}[request.param]


def table(name, alpha=2, beta=3, F=QQ):
    return catalog.instantiate(name, {"alpha": alpha, "beta": beta}, F)


def fr(s):
    return Fraction(s)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
