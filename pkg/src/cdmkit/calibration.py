"""Offset calibration: regress compressed size on random-input length.

A compressor's constant per-file overhead (header and format bytes) is
estimated by compressing uniformly random byte strings of increasing
length and fitting an ordinary least-squares line through the per-length
mean sizes. Random data is incompressible, so the fitted slope is the
per-byte cost and the intercept is the fixed overhead; the intercept,
rounded half-up and clamped by the smallest observed size, becomes the
integer offset that the offset-corrected dissimilarity subtracts.
"""

import math
import random
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Union

from .compressor import CompressorSpec, SizeCache, compressed_size, make_compressor
from .exceptions import CalibrationError

SizeFn = Callable[[bytes], int]


@dataclass(frozen=True)
class CalibrationPoint:
    input_length: int
    mean_size: float

    def __post_init__(self):
        if self.input_length < 0:
            raise ValueError("input_length must be >= 0")
        if self.mean_size < 0:
            raise ValueError("mean_size must be >= 0")


@dataclass(frozen=True)
class OffsetModel:
    slope: float
    intercept: float
    offset: int
    compressor_id: str

    def __post_init__(self):
        if self.offset < 0:
            raise ValueError("offset must be >= 0")


def generate_random_inputs(
    max_len: int, trials_per_length: int, seed: int
) -> list[tuple[int, bytes]]:
    """Seeded corpus: for each length 0..max_len, trials_per_length strings
    drawn uniformly over all 256 byte values."""
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    if trials_per_length < 1:
        raise ValueError("trials_per_length must be >= 1")
    rng = random.Random(seed)
    out = []
    for length in range(max_len + 1):
        for _ in range(trials_per_length):
            out.append((length, rng.randbytes(length)))
    return out


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def fit_line(
    points: list[CalibrationPoint], compressor_id: str = ""
) -> OffsetModel:
    """OLS fit of mean size against length; intercept becomes the offset."""
    if len({p.input_length for p in points}) < 2:
        raise CalibrationError("need points at >= 2 distinct lengths")
    lengths = [p.input_length for p in points]
    sizes = [p.mean_size for p in points]
    slope, intercept = statistics.linear_regression(lengths, sizes)
    offset = _round_half_up(intercept)
    floor = math.floor(min(sizes))
    offset = max(0, min(offset, floor))
    return OffsetModel(
        slope=slope, intercept=intercept, offset=offset, compressor_id=compressor_id
    )


def calibration_points(
    compressor: Union[CompressorSpec, SizeFn],
    max_len: int = 100,
    trials_per_length: int = 5,
    seed: int = 0,
    cache: SizeCache | None = None,
    jobs: int = 1,
) -> list[CalibrationPoint]:
    """Mean compressed size per input length over the seeded random corpus.

    ``compressor`` is either a CompressorSpec or any bytes -> int size
    function (handy for mocks and for compressors under test).
    """
    inputs = generate_random_inputs(max_len, trials_per_length, seed)
    if isinstance(compressor, CompressorSpec):
        comp = make_compressor(compressor)
        spec = compressor

        def measure(data: bytes) -> int:
            return compressed_size(spec, data, cache=cache, compressor=comp)

    else:
        measure = compressor
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            sizes = list(pool.map(measure, (data for _, data in inputs)))
    else:
        sizes = [measure(data) for _, data in inputs]
    by_length: dict[int, list[int]] = {}
    for (length, _), size in zip(inputs, sizes):
        by_length.setdefault(length, []).append(size)
    return [
        CalibrationPoint(input_length=length, mean_size=statistics.fmean(vals))
        for length, vals in sorted(by_length.items())
    ]


def estimate_offset(
    compressor: Union[CompressorSpec, SizeFn],
    max_len: int = 100,
    trials_per_length: int = 5,
    seed: int = 0,
    cache: SizeCache | None = None,
    jobs: int = 1,
) -> OffsetModel:
    """Calibrate ``compressor`` and return its fitted offset model."""
    points = calibration_points(
        compressor, max_len, trials_per_length, seed, cache=cache, jobs=jobs
    )
    if isinstance(compressor, CompressorSpec):
        name = compressor.id
    else:
        name = getattr(compressor, "__name__", "custom")
    return fit_line(points, compressor_id=name)
