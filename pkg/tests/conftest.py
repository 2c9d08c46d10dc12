import pytest

from dynfatigue.kernels import available_backends

ACCEPTANCE_LINES = []


@pytest.fixture(params=sorted(available_backends()))
def kernel(request):
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
