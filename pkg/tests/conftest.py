"""Shared test plumbing: the acceptance-criterion reporter.

Each acceptance test both asserts its criterion and records a single
human-readable pass/fail line; the lines are replayed in the terminal
summary so the verdicts are visible even when output capture is on.
"""

import pytest

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion():
    """Record one pass/fail line for an acceptance criterion, then assert."""

    def _record(number: int, passed: bool, detail: str) -> None:
        line = f"[criterion {number}] {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE_LINES.append(line)
        print(line)
        assert passed, line

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
