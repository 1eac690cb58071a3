"""Prints one pass/fail line per acceptance criterion at the end of the run."""

import re
from collections import defaultdict

_OUTCOMES = defaultdict(dict)


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        name = report.nodeid.split("::")[-1]
        m = re.match(r"test_c(\d+)", name)
        if m:
            _OUTCOMES[int(m.group(1))][name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_OUTCOMES):
        parts = _OUTCOMES[num]
        ok = all(v == "passed" for v in parts.values())
        failed = [k for k, v in parts.items() if v != "passed"]
        detail = f"  (not passing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(
            f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  [{len(parts)} test(s)]{detail}")
