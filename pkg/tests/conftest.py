from __future__ import annotations

from importlib.resources import files
from pathlib import Path

import pytest

FIXTURES = Path(str(files("ltlsmc") / "fixtures"))
GOLDEN_SCHEDULE = "T2,T2,T1,T1,T1,T1,T1,T2,T2,T2"
MUTEX_PROPERTY = "G (!(crit1 && crit2))"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture
def mutex_program():
    from ltlsmc.smc import load_program_file

    return load_program_file(FIXTURES / "mutex.json")


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
