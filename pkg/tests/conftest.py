"""Shared test fixtures plus the acceptance-criteria summary hook."""

import pytest

_acceptance_lines = []


@pytest.fixture
def acceptance():
    """Recorder for acceptance checks: one pass/fail line per criterion.

    Records the line before asserting so a failed criterion still shows
    up, marked FAIL, in the end-of-run summary.
    """

    def record(label: str, ok: bool, detail: str):
        line = f"{'PASS' if ok else 'FAIL'}  {label}  [{detail}]"
        _acceptance_lines.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
