import pytest

from gerber import registry
from gerber.bv import GeneratingOperator

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def ops():
    """Generating operator (with the registry's own connection) for every example."""
    out = {}
    for name in registry.NAMES:
        spec, theta = registry.get(name)
        out[name] = GeneratingOperator.from_spec(spec, theta)
    return out


@pytest.fixture(scope="session")
def flat_ops():
    """theta = 0 operators for every example."""
    return {name: GeneratingOperator.from_spec(registry.get(name)[0]) for name in registry.NAMES}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
