import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import load  # noqa: E402


@pytest.fixture(scope="session")
def order2():
    return load("order2.gem")


@pytest.fixture(scope="session")
def order8():
    return load("order8.gem")


@pytest.fixture(scope="session")
def order16():
    return load("order16_nonsimple.gem")


@pytest.fixture(scope="session")
def torus():
    return load("torus_residue.gem")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
