import mpmath
import pytest


@pytest.fixture
def mp50():
    with mpmath.workdps(50):
        yield mpmath


_CRITERIA: list[str] = []


@pytest.fixture
def report():
    """Record one PASS/FAIL line for an acceptance criterion and return the verdict."""
    def emit(number: int, name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  [{number:>2}] {name}" + (f": {detail}" if detail else "")
        _CRITERIA.append(line)
        print(line)
        return ok
    return emit


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
