from __future__ import annotations

from pathlib import Path

import pytest

from scriptgrove import parse_log

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = Path(__file__).parent / "golden"

BASE = 1_600_000_000_000


def load_fixture(name: str):
    return parse_log((FIXTURES / f"{name}.jsonl").read_bytes())


@pytest.fixture
def abcd_log():
    return load_fixture("abcd")


@pytest.fixture
def twopara_log():
    return load_fixture("twopara")


@pytest.fixture
def threeday_log():
    return load_fixture("threeday")
