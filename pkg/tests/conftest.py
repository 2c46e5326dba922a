"""Shared acceptance reporting: one PASS/FAIL line per criterion.

Lines are printed inside the test (visible with -s or on failure) and
echoed in a terminal summary section so a plain `pytest -v` run still
shows every criterion's measured numbers.
"""

import pytest

_lines = []


@pytest.fixture
def acceptance_report():
    def record(criterion, passed, detail):
        passed = bool(passed)
        line = f"{criterion} {'PASS' if passed else 'FAIL'}: {detail}"
        print(line)
        _lines.append(line)
        assert passed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _lines:
        terminalreporter.section("acceptance criteria (simulator)")
        for line in _lines:
            terminalreporter.write_line(line)
