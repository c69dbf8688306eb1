from pathlib import Path

import pytest

from bbhilb.corpus import corpus


@pytest.fixture(scope="session")
def sample_corpus():
    """200 random zero-dimensional ideals, d <= 3, colength <= 6."""
    return corpus(seed=20240601, count=200)


@pytest.fixture(scope="session")
def problems_dir():
    return Path(__file__).resolve().parent.parent / "problems"


_ACCEPTANCE = []


@pytest.fixture
def report():
    """Record one acceptance line: report(number, ok, detail)."""

    def record(number, ok, detail=""):
        _ACCEPTANCE.append((number, ok, detail))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
