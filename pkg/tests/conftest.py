import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
    derandomize=True,
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Filled by tests/test_acceptance.py: criterion number -> (status, summary).
ACCEPTANCE_LINES: dict = {}


@pytest.fixture
def acceptance_record():
    def record(number: int, passed: bool, summary: str) -> None:
        ACCEPTANCE_LINES[number] = ("PASS" if passed else "FAIL", summary)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        status, summary = ACCEPTANCE_LINES[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {summary}")
