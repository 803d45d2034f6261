import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hyperpolar import ModelSpec, generate  # noqa: E402


@pytest.fixture(scope="session")
def paper_model():
    """``(z, truth)`` for the reference model at the default 10 kHz."""
    return generate(ModelSpec.paper())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number, title, checks):
        ok = all(passed for _, passed, _ in checks)
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}")
        for name, passed, detail in checks:
            ACCEPTANCE_LINES.append(f"    {'ok  ' if passed else 'FAIL'} {name}: {detail}")
        print("\n".join(ACCEPTANCE_LINES[-len(checks) - 1 :]))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
