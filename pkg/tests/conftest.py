from pathlib import Path

import pytest

from schemavec.cleaning import clean_corpus
from schemavec.ddl import extract_schemas
from schemavec.embedding import TrainConfig, train
from schemavec.fileio import bundled_corpus_path, bundled_lexicon_path, bundled_wordnet_dir
from schemavec.wordnet import load_wordnet
from schemavec.wordsplit import load_lexicon

FIXTURES = Path(__file__).parent / "fixtures"

# Desk-scale training configuration shared by tests that need a real model.
DESK_CONFIG = TrainConfig(dim=50, epochs=5, seed=42, bucket=100_000)


@pytest.fixture(scope="session")
def lexicon():
    return load_lexicon(bundled_lexicon_path())


@pytest.fixture(scope="session")
def wordnet_graph():
    return load_wordnet(bundled_wordnet_dir())


@pytest.fixture(scope="session")
def mini_wordnet_dir():
    return FIXTURES / "mini_wordnet"


@pytest.fixture(scope="session")
def mini_graph(mini_wordnet_dir):
    return load_wordnet(mini_wordnet_dir)


@pytest.fixture(scope="session")
def bundled_schemas():
    text = Path(bundled_corpus_path()).read_text(encoding="utf-8")
    schemas, warnings = extract_schemas(text, "synthetic_schemas.sql")
    assert not warnings
    return schemas


@pytest.fixture(scope="session")
def bundled_clean(bundled_schemas):
    kept, _ = clean_corpus(bundled_schemas)
    return kept


@pytest.fixture(scope="session")
def desk_model(bundled_clean):
    documents = [[s.table_name, *s.columns] for s in bundled_clean]
    return train(documents, DESK_CONFIG)
