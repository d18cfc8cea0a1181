import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

#: Lines appended by ``test_acceptance.record``; printed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
