import json
from pathlib import Path

import pytest

from smellscan import scan

FIXTURES = Path(__file__).parent / "fixtures"
CORPUS = FIXTURES / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> Path:
    return CORPUS


@pytest.fixture(scope="session")
def oracle() -> dict:
    return json.loads((FIXTURES / "corpus_oracle.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def corpus_report():
    return scan(CORPUS)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])
