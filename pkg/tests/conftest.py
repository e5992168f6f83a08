import pytest

# Filled by tests/test_acceptance.py: criterion number -> summary line.
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def record_acceptance():
    def record(number: int, line: str) -> None:
        ACCEPTANCE_LINES[number] = line
        print(line)

    return record
