from pathlib import Path

import pytest

from mfgenus.corpus import corpus

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def fan_corpus():
    return corpus()
