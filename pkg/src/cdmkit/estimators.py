"""Scikit-learn style wrappers around the encoding/distance/K-NN core.

These make the toolkit composable in sklearn pipelines and grids:

    Pipeline([("encode", PianoRollEncoder()),
              ("knn", CompressionKnnClassifier(k=5))])

Parameters are plain strings and ints so get_params/set_params and
cloning work as usual. The functional API underneath stays the source of
truth; these classes only adapt its shapes.
"""

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .classify import leave_one_out, vote
from .compressor import (
    SizeCache,
    blocksort_spec,
    compressed_size,
    lz_spec,
    make_compressor,
)
from .encoding import encode_events
from .measures import MeasureSpec, matrix_from_sizes, pairwise_matrix

_BUILTIN_SPECS = {"blocksort": blocksort_spec, "lz": lz_spec}


def _resolve_spec(name: str):
    if name not in _BUILTIN_SPECS:
        raise ValueError(
            f"unknown compressor {name!r}; expected one of {sorted(_BUILTIN_SPECS)}"
        )
    return _BUILTIN_SPECS[name]()


def _as_bytes(x) -> bytes:
    if isinstance(x, bytes):
        return x
    if isinstance(x, str):
        return x.encode("ascii")
    raise TypeError(f"expected str or bytes, got {type(x).__name__}")


class PianoRollEncoder(BaseEstimator, TransformerMixin):
    """Stateless transformer: lists of NoteEvents -> '0'/'1' strings."""

    def fit(self, X, y=None):
        return self

    def transform(self, X):
        return [encode_events(events) for events in X]


class CompressionDistance(BaseEstimator, TransformerMixin):
    """Transformer mapping strings to distances against a fitted corpus.

    ``fit`` stores the reference strings; ``transform`` returns the
    (n_queries, n_references) matrix where entry (i, j) applies the measure
    to C(query_i), C(ref_j) and C(ref_j + query_i), the reference placed
    first in the concatenation. ``fit_transform`` on the same X instead
    computes the symmetric lower-index-first pairwise matrix, so a LOO
    classifier downstream sees exactly the matrix the functional pipeline
    produces.
    """

    def __init__(self, compressor="blocksort", measure="cdm", offset=0,
                 cache_path=None, jobs=1):
        self.compressor = compressor
        self.measure = measure
        self.offset = offset
        self.cache_path = cache_path
        self.jobs = jobs

    def _measure_spec(self) -> MeasureSpec:
        if self.measure == "cdm-offset":
            return MeasureSpec(kind="cdm-offset", offset=self.offset)
        return MeasureSpec(kind=self.measure)

    def fit(self, X, y=None):
        self.spec_ = _resolve_spec(self.compressor)
        self.cache_ = SizeCache(self.cache_path)
        self.references_ = [_as_bytes(x) for x in X]
        comp = make_compressor(self.spec_)
        self.reference_sizes_ = [
            compressed_size(self.spec_, r, cache=self.cache_, compressor=comp)
            for r in self.references_
        ]
        return self

    def transform(self, X):
        check_is_fitted(self, "references_")
        measure = self._measure_spec()
        comp = make_compressor(self.spec_)

        def size(data: bytes) -> int:
            return compressed_size(self.spec_, data, cache=self.cache_, compressor=comp)

        out = np.empty((len(X), len(self.references_)), dtype=np.float64)
        for i, raw in enumerate(X):
            q = _as_bytes(raw)
            c_q = size(q)
            for j, (ref, c_r) in enumerate(
                zip(self.references_, self.reference_sizes_)
            ):
                out[i, j] = measure.evaluate(c_r, c_q, size(ref + q))
        return out

    def fit_transform(self, X, y=None):
        self.fit(X)
        matrix = pairwise_matrix(
            [(str(i), "", r) for i, r in enumerate(self.references_)],
            self.spec_,
            self._measure_spec(),
            cache=self.cache_,
            jobs=self.jobs,
        )
        return matrix.values


class CompressionKnnClassifier(BaseEstimator, ClassifierMixin):
    """K-NN on compression dissimilarity, majority vote with the same
    deterministic tie-breaking as the functional classifier."""

    def __init__(self, k=5, compressor="blocksort", measure="cdm", offset=0,
                 cache_path=None, jobs=1):
        self.k = k
        self.compressor = compressor
        self.measure = measure
        self.offset = offset
        self.cache_path = cache_path
        self.jobs = jobs

    def fit(self, X, y):
        X = list(X)
        y = list(y)
        if len(y) != len(X):
            raise ValueError("X and y length mismatch")
        if self.k < 1 or self.k > len(y):
            raise ValueError(f"k must be in [1, {len(y)}], got {self.k}")
        self.distance_ = CompressionDistance(
            compressor=self.compressor,
            measure=self.measure,
            offset=self.offset,
            cache_path=self.cache_path,
            jobs=self.jobs,
        ).fit(X)
        self.y_ = [str(label) for label in y]
        self.classes_ = np.array(sorted(set(self.y_)))
        return self

    def predict(self, X):
        check_is_fitted(self, "y_")
        distances = self.distance_.transform(X)
        out = []
        for row in distances:
            ranked = sorted((float(d), j) for j, d in enumerate(row))
            top = ranked[: self.k]
            out.append(
                vote([self.y_[j] for _, j in top], [d for d, _ in top])
            )
        return np.array(out)

    def loo_predict(self) -> np.ndarray:
        """Leave-one-out predictions over the fitted corpus itself."""
        check_is_fitted(self, "y_")
        labels = [(str(i), label) for i, label in enumerate(self.y_)]
        singles = self.distance_.reference_sizes_
        refs = self.distance_.references_
        spec = self.distance_.spec_
        comp = make_compressor(spec)
        pair_sizes = {}
        for i in range(len(refs)):
            for j in range(i, len(refs)):
                pair_sizes[(i, j)] = compressed_size(
                    spec, refs[i] + refs[j],
                    cache=self.distance_.cache_, compressor=comp,
                )
        matrix = matrix_from_sizes(
            labels, singles, pair_sizes, self.distance_._measure_spec()
        )
        result = leave_one_out(matrix, k=self.k)
        return np.array([item.predicted_label for item in result.per_item])
