import sys
from pathlib import Path

import pytest

from princlab.library import boolean, chain, grid, m3, n5

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, msg = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {msg}")


@pytest.fixture
def small():
    return {"C4": chain(4), "B3": boolean(3), "M3": m3(), "N5": n5(), "C3xC3": grid(3, 3)}
