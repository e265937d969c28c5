import os

import pytest

# Filled by test_acceptance; one line per criterion.
ACCEPTANCE_LINES = []


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PQCOLOR_STRESS") == "1":
        return
    skip = pytest.mark.skip(reason="set PQCOLOR_STRESS=1 to run")
    for item in items:
        if "stress" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
