import shutil

import pytest
from fastapi.testclient import TestClient

import fixture_corpus
from lexsumm import (
    CaseMetadata,
    CaseStore,
    LabeledSentence,
    ScoringModel,
    content_id,
    normalize_text,
    parse_judgment,
    train,
    training_examples,
)
from lexsumm.api import create_app
from lexsumm.sections import HEADED_KINDS


@pytest.fixture(scope="session")
def corpus_cases():
    return fixture_corpus.CASES


@pytest.fixture(scope="session")
def parsed_cases():
    """key -> ParsedJudgment for every fixture case."""
    return {
        case.key: parse_judgment(normalize_text(case.text))
        for case in fixture_corpus.CASES
    }


@pytest.fixture(scope="session")
def case_ids():
    """key -> store id for every fixture case."""
    return {case.key: content_id(case.text) for case in fixture_corpus.CASES}


@pytest.fixture(scope="session")
def seeded_store_dir(tmp_path_factory):
    """A store directory with all fixture cases ingested and gold files written."""
    root = tmp_path_factory.mktemp("corpus-store")
    store = CaseStore(root)
    for case in fixture_corpus.CASES:
        cid = store.ingest(case.text, CaseMetadata.from_dict(case.metadata()))
        if case.gold is not None:
            store.gold_path(cid).write_text(case.gold, encoding="utf-8")
    return root


@pytest.fixture(scope="session")
def store(seeded_store_dir):
    return CaseStore(seeded_store_dir)


@pytest.fixture()
def fresh_store(tmp_path):
    """An empty store private to one test."""
    return CaseStore(tmp_path / "store")


@pytest.fixture(scope="session")
def fixture_model():
    """A handcrafted scoring model; favors early, cue-bearing sentences."""
    return ScoringModel(weights=(-1.5, 0.8, 0.6, 0.4, 2.0, 1.0), bias=-0.75)


@pytest.fixture(scope="session")
def corpus_labels(parsed_cases):
    """Extractive labels over the full fixture cases: the opening sentence of
    each headed section plus sentences carrying a ruling verb."""
    labels = []
    for case in fixture_corpus.FULL_CASES:
        parsed = parsed_cases[case.key]
        for kind in HEADED_KINDS:
            for sentence in parsed.section(kind).sentences:
                positive = (
                    sentence.index == 0
                    or "Buộc" in sentence.text
                    or "Chấp nhận" in sentence.text
                )
                labels.append(
                    LabeledSentence(
                        case_id=case.key,
                        section=kind,
                        sentence_index=sentence.index,
                        label=1 if positive else 0,
                    )
                )
    return labels


@pytest.fixture(scope="session")
def trained_model(parsed_cases, corpus_labels):
    examples = training_examples(parsed_cases, corpus_labels)
    return train(examples)


def _clone_store(src, tmp_path, name):
    dst = tmp_path / name
    shutil.copytree(src, dst)
    return dst


@pytest.fixture()
def client(seeded_store_dir, tmp_path):
    """API over a private copy of the seeded store, no model loaded."""
    app = create_app(CaseStore(_clone_store(seeded_store_dir, tmp_path, "api-store")))
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def model_client(seeded_store_dir, tmp_path, trained_model):
    """API over a private copy of the seeded store with a model loaded."""
    app = create_app(
        CaseStore(_clone_store(seeded_store_dir, tmp_path, "api-store-m")),
        model=trained_model,
    )
    with TestClient(app) as c:
        yield c


@pytest.fixture()
def empty_client(tmp_path):
    app = create_app(CaseStore(tmp_path / "empty-store"))
    with TestClient(app) as c:
        yield c
