import pytest

from cauchyint.verify import VerifyConfig

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def default_cfg():
    return VerifyConfig()


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
