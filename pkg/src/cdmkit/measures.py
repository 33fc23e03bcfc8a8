"""Compression-based dissimilarity measures and pairwise distance matrices.

The core quantity is the compression dissimilarity of two byte strings,

    cdm  = C(xy) / (C(x) + C(y))

with C the compressed size and xy plain concatenation. Near-identical
strings land near 0.5 (the concatenation compresses to one copy's worth),
unrelated strings near 1.0. The offset-corrected variant subtracts the
compressor's constant per-file overhead o from every size,

    cdm_offset = (C(xy) - o) / ((C(x) - o) + (C(y) - o))

so the ratio reflects content rather than headers; any per-byte scale
factor cancels and never appears. The normalized compression distance is
included as the sibling measure, (C(xy) - min) / max, clamped at zero.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .compressor import CompressorSpec, SizeCache, compressed_size, make_compressor
from .exceptions import OffsetTooLargeError

MEASURE_KINDS = ("cdm", "cdm-offset", "ncd")


def cdm(c_x: int, c_y: int, c_xy: int) -> float:
    if c_x + c_y <= 0:
        raise ValueError("cdm undefined: C(x) + C(y) must be positive")
    return c_xy / (c_x + c_y)


def cdm_offset(c_x: int, c_y: int, c_xy: int, offset: int) -> float:
    if offset < 0:
        raise ValueError(f"offset must be >= 0, got {offset}")
    bad = [name for name, c in (("c_x", c_x), ("c_y", c_y), ("c_xy", c_xy)) if c <= offset]
    if bad:
        raise OffsetTooLargeError(
            f"offset {offset} >= compressed size of: {', '.join(bad)}", items=bad
        )
    return (c_xy - offset) / ((c_x - offset) + (c_y - offset))


def ncd(c_x: int, c_y: int, c_xy: int) -> float:
    hi = max(c_x, c_y)
    if hi <= 0:
        raise ValueError("ncd undefined: max(C(x), C(y)) must be positive")
    return max(0.0, (c_xy - min(c_x, c_y)) / hi)


@dataclass(frozen=True)
class MeasureSpec:
    """Which dissimilarity to apply to a triple of compressed sizes."""

    kind: str
    offset: int | None = None

    def __post_init__(self):
        if self.kind not in MEASURE_KINDS:
            raise ValueError(f"unknown measure kind {self.kind!r}")
        if self.kind == "cdm-offset":
            if self.offset is None:
                raise ValueError("cdm-offset requires an offset")
            if self.offset < 0:
                raise ValueError("offset must be >= 0")
        elif self.offset is not None:
            raise ValueError(f"{self.kind} takes no offset")

    def evaluate(self, c_x: int, c_y: int, c_xy: int) -> float:
        if self.kind == "cdm":
            return cdm(c_x, c_y, c_xy)
        if self.kind == "cdm-offset":
            return cdm_offset(c_x, c_y, c_xy, self.offset)
        return ncd(c_x, c_y, c_xy)


@dataclass
class DistanceMatrix:
    """Symmetric pairwise dissimilarities with row/column identity.

    The diagonal holds the measure's actual self-dissimilarity (about 0.5
    for cdm), not zero; classification excludes it instead.
    """

    labels: list[tuple[str, str]]
    values: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.labels)
        self.values = np.asarray(self.values, dtype=np.float64)
        if self.values.shape != (n, n):
            raise ValueError(
                f"matrix shape {self.values.shape} does not fit {n} labels"
            )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def item_ids(self) -> list[str]:
        return [item_id for item_id, _ in self.labels]

    @property
    def class_labels(self) -> list[str]:
        return [label for _, label in self.labels]


def collect_sizes(
    corpus: list[tuple[str, str, bytes]],
    spec: CompressorSpec,
    cache: SizeCache | None = None,
    jobs: int = 1,
) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Compressed sizes of every item and of every pair concatenation.

    Pairs (i, j) with i <= j are concatenated lower index first; the
    returned dict covers exactly those ordered-by-index pairs. This is the
    expensive step, so offset sweeps reuse its output across offsets.
    """
    if not corpus:
        raise ValueError("corpus must be non-empty")
    comp = make_compressor(spec)

    def measure(data: bytes) -> int:
        return compressed_size(spec, data, cache=cache, compressor=comp)

    items = [data for _, _, data in corpus]
    n = len(items)
    pairs = [(i, j) for i in range(n) for j in range(i, n)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            singles = list(pool.map(measure, items))
            pair_sizes = list(
                pool.map(lambda ij: measure(items[ij[0]] + items[ij[1]]), pairs)
            )
    else:
        singles = [measure(data) for data in items]
        pair_sizes = [measure(items[i] + items[j]) for i, j in pairs]
    return singles, dict(zip(pairs, pair_sizes))


def matrix_from_sizes(
    labels: list[tuple[str, str]],
    singles: list[int],
    pair_sizes: dict[tuple[int, int], int],
    measure: MeasureSpec,
    provenance: dict | None = None,
) -> DistanceMatrix:
    """Apply a measure to precomputed sizes; cheap relative to compression."""
    n = len(labels)
    if measure.kind == "cdm-offset":
        offending = [
            labels[i][0] for i in range(n) if singles[i] <= measure.offset
        ]
        if offending:
            raise OffsetTooLargeError(
                f"offset {measure.offset} >= compressed size of "
                f"{len(offending)} item(s): {', '.join(offending[:5])}",
                items=offending,
            )
    values = np.empty((n, n), dtype=np.float64)
    for (i, j), c_xy in pair_sizes.items():
        try:
            d = measure.evaluate(singles[i], singles[j], c_xy)
        except OffsetTooLargeError as exc:
            raise OffsetTooLargeError(
                f"offset {measure.offset} too large for pair "
                f"({labels[i][0]}, {labels[j][0]})",
                items=[labels[i][0], labels[j][0]],
            ) from exc
        values[i, j] = d
        values[j, i] = d
    prov = dict(provenance or {})
    prov.setdefault("measure", measure.kind)
    prov.setdefault("offset", measure.offset)
    return DistanceMatrix(labels=labels, values=values, provenance=prov)


def pairwise_matrix(
    corpus: list[tuple[str, str, bytes]],
    spec: CompressorSpec,
    measure: MeasureSpec,
    cache: SizeCache | None = None,
    jobs: int = 1,
) -> DistanceMatrix:
    """Full pairwise dissimilarity matrix over (item_id, label, bytes) triples."""
    labels = [(item_id, label) for item_id, label, _ in corpus]
    singles, pair_sizes = collect_sizes(corpus, spec, cache=cache, jobs=jobs)
    return matrix_from_sizes(
        labels,
        singles,
        pair_sizes,
        measure,
        provenance={"compressor": spec.id},
    )
