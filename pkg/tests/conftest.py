import pytest

from cdmkit.harness import ingest, make_synthetic_corpus


@pytest.fixture(scope="session")
def tiny_corpus_root(tmp_path_factory):
    """2 classes x 3 pieces, seed 1; small enough for fast harness tests."""
    root = tmp_path_factory.mktemp("tiny") / "corpus"
    make_synthetic_corpus(root, n_classes=2, pieces_per_class=3, seed=1)
    return root


@pytest.fixture(scope="session")
def tiny_manifest(tiny_corpus_root):
    return ingest(tiny_corpus_root)
