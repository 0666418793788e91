import sys

import pytest
from hypothesis import settings

from hodgecycles.fermat import fermat_context
from hodgecycles.periods import CITCycle

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

LINE_FILE = """\
# Fermat cubic surface and one of its lines
n = 2
d = 3
cycle L {
  coeff = 1
  f = [x0 + x1; x2 + x3]
  g = [x0^2 - x0*x1 + x1^2; x2^2 - x2*x3 + x3^2]
}
"""


@pytest.fixture(scope="session")
def cubic():
    return fermat_context(2, 3)


@pytest.fixture(scope="session")
def quartic():
    return fermat_context(2, 4)


def cubic_line(ctx):
    R = ctx.ring
    p = R.parse
    return CITCycle.single([p("x0 + x1"), p("x2 + x3")],
                           [p("x0^2 - x0*x1 + x1^2"), p("x2^2 - x2*x3 + x3^2")])


@pytest.fixture(scope="session")
def line(cubic):
    return cubic_line(cubic)


@pytest.fixture
def line_file(tmp_path):
    path = tmp_path / "line.hc"
    path.write_text(LINE_FILE)
    return path


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
