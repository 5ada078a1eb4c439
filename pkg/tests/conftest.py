"""Shared test plumbing: one-line acceptance verdict reporting."""

import pytest


def pytest_configure(config):
    config._criterion_lines = []


@pytest.fixture
def criterion(request):
    """Record a one-line PASS/FAIL verdict and enforce it.

    Usage: criterion(3, ok_bool, "detail shown in the summary line").
    """

    def report(number, ok, detail=""):
        verdict = "PASS" if ok else "FAIL"
        line = f"criterion {number}: {verdict}" + (f" -- {detail}" if detail else "")
        request.config._criterion_lines.append(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
