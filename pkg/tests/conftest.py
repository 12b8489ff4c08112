import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dpbrauer.piclattice import make_pic_lattice  # noqa: E402
from dpbrauer.pisystems import all_pisystems  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def classified():
    """``{degree: all_pisystems(degree)}``, computed once per session."""
    cache = {}

    def get(degree):
        if degree not in cache:
            cache[degree] = all_pisystems(make_pic_lattice(degree))
        return cache[degree]

    return get


@pytest.fixture
def report():
    def record(criterion: int, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion:>2}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
