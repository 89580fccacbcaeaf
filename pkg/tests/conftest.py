import pytest

from disclosure_game.params import ModelParams


@pytest.fixture
def fig():
    """Primitives of the published region plots, at delta = 0.5 and v = 1."""
    return ModelParams(v=1.0, c=0.5, delta=0.5, beta=0.6, r=0.3, k=0.8)


_CRITERIA = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_CRITERIA] = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion's verdict for the terminal summary."""
    results = request.config.stash[_CRITERIA]

    def record(number: int, ok: bool, detail: str) -> bool:
        results[number] = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_CRITERIA, {})
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
