"""Estimator wrappers: parity with the functional API, sklearn protocol."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.pipeline import Pipeline

from cdmkit.classify import knn_predict, leave_one_out
from cdmkit.compressor import make_compressor
from cdmkit.compressor.spec import blocksort_spec, lz_spec
from cdmkit.encoding import NoteEvent, encode_events
from cdmkit.estimators import (
    CompressionDistance,
    CompressionKnnClassifier,
    PianoRollEncoder,
)
from cdmkit.measures import MeasureSpec, pairwise_matrix


def _scores(seed_pitch: int, n: int = 4) -> list[list[NoteEvent]]:
    out = []
    for i in range(n):
        events = [
            NoteEvent(pitch=seed_pitch + (j % 5), onset=j, duration=2)
            for j in range(12 + i)
        ]
        out.append(events)
    return out


@pytest.fixture(scope="module")
def two_class_strings():
    low = [encode_events(e) for e in _scores(30)]
    high = [encode_events(e) for e in _scores(80)]
    X = low + high
    y = ["low"] * len(low) + ["high"] * len(high)
    return X, y


def test_encoder_matches_functional():
    scores = _scores(60, n=3)
    encoder = PianoRollEncoder()
    assert encoder.fit_transform(scores) == [encode_events(e) for e in scores]


def test_encoder_is_stateless():
    encoder = PianoRollEncoder()
    assert encoder.fit([]) is encoder
    assert encoder.transform([]) == []


def test_distance_fit_transform_matches_pairwise(two_class_strings):
    X, _ = two_class_strings
    est = CompressionDistance(compressor="lz", measure="cdm")
    values = est.fit_transform(X)
    corpus = [(str(i), "", x.encode("ascii")) for i, x in enumerate(X)]
    expected = pairwise_matrix(corpus, lz_spec(), MeasureSpec(kind="cdm"))
    assert np.array_equal(values, expected.values)


def test_distance_transform_reference_first(two_class_strings):
    X, _ = two_class_strings
    est = CompressionDistance(compressor="lz", measure="cdm").fit(X[:3])
    query = X[3]
    out = est.transform([query])
    assert out.shape == (1, 3)
    comp = make_compressor(lz_spec())
    q = query.encode("ascii")
    for j, ref in enumerate(X[:3]):
        r = ref.encode("ascii")
        expected = comp.size(r + q) / (comp.size(r) + comp.size(q))
        assert out[0, j] == pytest.approx(expected, rel=1e-12)


def test_distance_requires_fit(two_class_strings):
    X, _ = two_class_strings
    from sklearn.exceptions import NotFittedError

    with pytest.raises(NotFittedError):
        CompressionDistance().transform(X[:1])


def test_distance_rejects_unknown_compressor(two_class_strings):
    X, _ = two_class_strings
    with pytest.raises(ValueError):
        CompressionDistance(compressor="gzip").fit(X[:2])


def test_distance_accepts_bytes_and_str(two_class_strings):
    X, _ = two_class_strings
    as_str = CompressionDistance(compressor="lz").fit_transform(X[:3])
    as_bytes = CompressionDistance(compressor="lz").fit_transform(
        [x.encode("ascii") for x in X[:3]]
    )
    assert np.array_equal(as_str, as_bytes)


def test_knn_predict_parity_with_functional(two_class_strings):
    X, y = two_class_strings
    clf = CompressionKnnClassifier(k=3, compressor="lz").fit(X, y)
    predictions = clf.predict(X[:2])
    # functional counterpart: matrix over references + query, query last
    corpus = [(str(i), lab, x.encode("ascii")) for i, (x, lab) in enumerate(zip(X, y))]
    for query, predicted in zip(X[:2], predictions):
        ext = corpus + [("q", "?", query.encode("ascii"))]
        matrix = pairwise_matrix(ext, lz_spec(), MeasureSpec(kind="cdm"))
        assert predicted == knn_predict(matrix, len(corpus), k=3)


def test_knn_loo_parity_with_functional(two_class_strings):
    X, y = two_class_strings
    clf = CompressionKnnClassifier(k=3, compressor="lz").fit(X, y)
    loo = clf.loo_predict()
    corpus = [(str(i), lab, x.encode("ascii")) for i, (x, lab) in enumerate(zip(X, y))]
    matrix = pairwise_matrix(corpus, lz_spec(), MeasureSpec(kind="cdm"))
    expected = leave_one_out(matrix, k=3)
    assert list(loo) == [item.predicted_label for item in expected.per_item]


def test_knn_classifies_separable_data(two_class_strings):
    X, y = two_class_strings
    clf = CompressionKnnClassifier(k=3, compressor="blocksort").fit(X, y)
    assert list(clf.loo_predict()) == y
    assert list(clf.classes_) == ["high", "low"]


def test_knn_accepts_generator_input(two_class_strings):
    X, y = two_class_strings
    clf = CompressionKnnClassifier(k=1, compressor="lz").fit(iter(X), iter(y))
    assert len(clf.y_) == len(y)


def test_knn_validation(two_class_strings):
    X, y = two_class_strings
    with pytest.raises(ValueError):
        CompressionKnnClassifier(k=0).fit(X, y)
    with pytest.raises(ValueError):
        CompressionKnnClassifier(k=len(X) + 1).fit(X, y)
    with pytest.raises(ValueError):
        CompressionKnnClassifier(k=1).fit(X, y[:-1])


def test_sklearn_protocol_round_trip():
    clf = CompressionKnnClassifier(k=3, compressor="lz", measure="ncd")
    params = clf.get_params()
    assert params["k"] == 3
    assert params["compressor"] == "lz"
    cloned = clone(clf)
    assert cloned.get_params() == params
    cloned.set_params(k=1)
    assert cloned.k == 1


def test_pipeline_composition(two_class_strings):
    scores = _scores(40, n=3) + _scores(90, n=3)
    y = ["a"] * 3 + ["b"] * 3
    pipeline = Pipeline(
        [
            ("encode", PianoRollEncoder()),
            ("knn", CompressionKnnClassifier(k=1, compressor="blocksort")),
        ]
    )
    pipeline.fit(scores, y)
    assert list(pipeline.predict(scores)) == y


def test_offset_measure_plumbing(two_class_strings):
    X, _ = two_class_strings
    plain = CompressionDistance(compressor="lz", measure="cdm").fit_transform(X[:3])
    zero = CompressionDistance(
        compressor="lz", measure="cdm-offset", offset=0
    ).fit_transform(X[:3])
    assert np.array_equal(plain, zero)
    corrected = CompressionDistance(
        compressor="lz", measure="cdm-offset", offset=17
    ).fit_transform(X[:3])
    assert not np.array_equal(plain, corrected)
