"""Shared test plumbing: acceptance-criterion result lines.

Tests named test_criterion_NN_* get one PASS/FAIL line each in the
terminal summary so the acceptance gate is readable at a glance.
"""
import re

_CRITERION = re.compile(r"test_criterion_(\d+)_([A-Za-z0-9_]+)")
_results = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m is None:
        return
    num, slug = int(m.group(1)), m.group(2)
    if report.when == "call":
        outcome = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        _results[num] = (slug, outcome)
    elif report.when == "setup" and not report.passed:
        _results[num] = (slug, "SKIP" if report.skipped else "FAIL")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        slug, outcome = _results[num]
        terminalreporter.write_line(f"criterion {num:2d} {slug:<28s} {outcome}")
