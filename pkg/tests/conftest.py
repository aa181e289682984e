import pathlib

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"

_acceptance_lines: list[str] = []


@pytest.fixture
def golden():
    return GOLDEN


@pytest.fixture
def verdict():
    """Record one PASS/FAIL line for an acceptance criterion, then assert."""

    def record(name: str, ok: bool, detail: str = ""):
        line = f"{name} {'PASS' if ok else 'FAIL'}" + (f": {detail}" if detail else "")
        print(line)
        _acceptance_lines.append(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
