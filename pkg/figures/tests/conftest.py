"""Acceptance reporting for the figures package, mirroring the simulator."""

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
        terminalreporter.section("acceptance criteria (figures)")
        for line in _lines:
            terminalreporter.write_line(line)
