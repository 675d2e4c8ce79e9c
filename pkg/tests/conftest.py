import os
import re
import sys

# make oracles.py importable regardless of how pytest was invoked
sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    num = int(m.group(1))
    if report.when == "call":
        if report.skipped:
            _CRITERIA[num] = "SKIPPED"
        else:
            _CRITERIA[num] = "PASSED" if report.passed else "FAILED"
    elif report.when == "setup":
        if report.skipped:
            _CRITERIA[num] = "SKIPPED"
        elif report.failed:
            _CRITERIA[num] = "FAILED"


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        terminalreporter.write_line(f"criterion {num}: {_CRITERIA[num]}")
