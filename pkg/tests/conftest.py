from pathlib import Path

import pytest

from snipassist.corpus import ingest_dump
from snipassist.lexicon import load_lexicon

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon()


@pytest.fixture(scope="session")
def store_small():
    store, _report = ingest_dump(FIXTURES / "posts_small.xml")
    return store


@pytest.fixture(scope="session")
def store20():
    store, _report = ingest_dump(FIXTURES / "posts_20.xml")
    return store
