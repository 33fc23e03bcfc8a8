"""cdmkit: compression-based dissimilarity for symbolic music.

Scores become '0'/'1' strings (an 88-bit key-state vector per semiquaver),
a compressor turns strings into sizes, sizes turn into dissimilarities
(cdm, offset-corrected cdm, ncd), and leave-one-out K-NN turns a distance
matrix into composer predictions. An exact McNemar test compares paired
runs. Everything is deterministic given the inputs and seeds.
"""

from .calibration import (
    CalibrationPoint,
    OffsetModel,
    calibration_points,
    estimate_offset,
    fit_line,
    generate_random_inputs,
)
from .classify import LooItem, LooResult, knn_predict, leave_one_out
from .compressor import (
    BlockSortCompressor,
    CompressorSpec,
    ExternalCompressor,
    LzssCompressor,
    SizeCache,
    blocksort_spec,
    bwt_forward,
    bwt_inverse,
    compress,
    compressed_size,
    decompress,
    lz_spec,
    make_compressor,
)
from .encoding import (
    NoteEvent,
    PianoRoll,
    encode_events,
    parse_events_json,
    quantize,
    serialize_events,
    to_bitstring,
    to_roll,
    transpose,
)
from .estimators import (
    CompressionDistance,
    CompressionKnnClassifier,
    PianoRollEncoder,
)
from .exceptions import (
    CalibrationError,
    CorpusError,
    EventSchemaError,
    ExternalCompressorError,
    MalformedStreamError,
    MidiFormatError,
    OffsetTooLargeError,
    TranspositionRangeError,
)
from .measures import (
    DistanceMatrix,
    MeasureSpec,
    cdm,
    cdm_offset,
    ncd,
    pairwise_matrix,
)
from .midi import parse_midi
from .stats import (
    ConfusionCounts,
    MethodComparison,
    compare_methods,
    confusion_from_results,
    mcnemar_exact,
)

__version__ = "0.1.0"

__all__ = [
    "BlockSortCompressor",
    "CalibrationError",
    "CalibrationPoint",
    "CompressionDistance",
    "CompressionKnnClassifier",
    "CompressorSpec",
    "ConfusionCounts",
    "CorpusError",
    "DistanceMatrix",
    "EventSchemaError",
    "ExternalCompressor",
    "ExternalCompressorError",
    "LooItem",
    "LooResult",
    "LzssCompressor",
    "MalformedStreamError",
    "MeasureSpec",
    "MethodComparison",
    "MidiFormatError",
    "NoteEvent",
    "OffsetModel",
    "OffsetTooLargeError",
    "PianoRoll",
    "PianoRollEncoder",
    "SizeCache",
    "TranspositionRangeError",
    "blocksort_spec",
    "bwt_forward",
    "bwt_inverse",
    "calibration_points",
    "cdm",
    "cdm_offset",
    "compare_methods",
    "compress",
    "compressed_size",
    "confusion_from_results",
    "decompress",
    "encode_events",
    "estimate_offset",
    "fit_line",
    "generate_random_inputs",
    "knn_predict",
    "leave_one_out",
    "lz_spec",
    "make_compressor",
    "mcnemar_exact",
    "ncd",
    "parse_events_json",
    "parse_midi",
    "pairwise_matrix",
    "quantize",
    "serialize_events",
    "to_bitstring",
    "to_roll",
    "transpose",
]
