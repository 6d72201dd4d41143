import pytest

_CHECKLIST: list[str] = []


@pytest.fixture
def acceptance():
    """Recorder for one-line acceptance verdicts, replayed after the run."""

    def record(line: str) -> None:
        _CHECKLIST.append(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CHECKLIST:
        terminalreporter.section("acceptance checklist")
        for line in _CHECKLIST:
            terminalreporter.write_line(line)
