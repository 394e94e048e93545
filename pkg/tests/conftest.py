"""Shared test configuration.

The acceptance suite prints one PASS/FAIL line per numbered criterion at
the end of the run; the hook below collects outcomes of tests named
test_criterion_N and renders that summary.
"""

import re
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

_CRITERION = re.compile(r"test_criterion_(\d+)")
_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if m and report.when == "call":
        _results[int(m.group(1))] = "PASS" if report.passed else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for n in sorted(_results):
        terminalreporter.write_line(f"ACCEPTANCE CRITERION {n}: {_results[n]}")
