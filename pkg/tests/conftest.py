import sys

import pytest

from tlcalc.scalar import Generic, RationalBeta, root_for_ell


@pytest.fixture
def generic():
    return Generic()


@pytest.fixture(params=[2, 3, 4], ids=lambda e: f"ell{e}")
def root_mode(request):
    return root_for_ell(request.param)


@pytest.fixture
def beta_zero():
    return root_for_ell(2)


@pytest.fixture
def third():
    from fractions import Fraction

    return RationalBeta(Fraction(1, 3))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
