from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from mdezeta import EvalContext, load_character

settings.register_profile("default", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

DATA = Path(__file__).resolve().parents[1] / "src" / "mdezeta" / "data"


@pytest.fixture
def ctx30():
    return EvalContext(30)


@pytest.fixture(scope="session")
def characters():
    return {p.stem: load_character(p) for p in sorted(DATA.glob("*.txt"))}


def agree(x, y, ctx):
    """Correct digits of x relative to y, at ctx's working precision."""
    from mdezeta.oracle import digits_agree

    return digits_agree(x, y, ctx)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
