import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from krallcremona.conjectures import Pipeline  # noqa: E402

_PIPELINES: dict = {}
CRITERIA: dict[int, str] = {}


def pipeline(family: str, n: int) -> Pipeline:
    """One shared pipeline per (family, n) for the whole session."""
    key = (family, n)
    if key not in _PIPELINES:
        _PIPELINES[key] = Pipeline(family, n)
    return _PIPELINES[key]


@pytest.fixture
def pipe():
    return pipeline


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path_factory, monkeypatch):
    monkeypatch.setenv("KRALLCREMONA_CACHE_DIR", str(tmp_path_factory.getbasetemp() / "cache"))


def record_criterion(number: int, passed: bool, detail: str) -> str:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'} - {detail}"
    CRITERIA[number] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        terminalreporter.write_line(CRITERIA[number])
