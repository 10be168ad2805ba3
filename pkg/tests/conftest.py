import pytest

from scriptgrader.scorers import LanguageModel
from scriptgrader.similarity import TrainingConfig, init_model
from scriptgrader.textpipe import build_vocabulary, tokenize

CORPUS_DOCS = [
    "entropy measures the disorder of a thermodynamic system",
    "the second law states that entropy of an isolated system never decreases",
    "heat flows from a hot body to a cold body",
    "a reversible process keeps the total entropy constant",
]


@pytest.fixture(scope="session")
def language_model():
    return LanguageModel.from_documents(CORPUS_DOCS)


@pytest.fixture(scope="session")
def small_vocab():
    return build_vocabulary([tokenize(d) for d in CORPUS_DOCS], min_count=1)


@pytest.fixture(scope="session")
def small_config():
    return TrainingConfig(d=8, h=8, seed=7, epochs=5)


@pytest.fixture(scope="session")
def small_model(small_vocab, small_config):
    return init_model(small_vocab, small_config)
