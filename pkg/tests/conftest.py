import sys

import pytest

from gwci.ifunction import validate_target


@pytest.fixture
def quintic():
    return validate_target(6, (5,))


@pytest.fixture
def p4():
    return validate_target(4)


def pytest_terminal_summary(terminalreporter):
    mods = [m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")]
    RESULTS = getattr(mods[0], "RESULTS", {}) if mods else {}
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
