import pytest
from hypothesis import settings

from qlorentz.double import default_double
from qlorentz.hopf import funq, uq
from qlorentz.pairing import default_pairing

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def F():
    return funq()


@pytest.fixture(scope="session")
def U():
    return uq()


@pytest.fixture(scope="session")
def P():
    return default_pairing()


@pytest.fixture(scope="session")
def D():
    return default_double()


_ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = []


@pytest.fixture
def criterion(request):
    """Record one pass/fail line for an acceptance criterion."""

    def record(number: int, title: str, ok: bool, detail: str) -> bool:
        line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}"
        request.config.stash[_ACCEPTANCE].append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE, [])
    if lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
