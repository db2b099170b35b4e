import pytest

from ca_forge.field import make_field, prime_power


@pytest.fixture
def gf():
    """gf(q) -> the field of order q."""

    def build(q):
        return make_field(*prime_power(q))

    return build


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
