"""Experiment harness: corpus handling, pipelines, reports, CLI."""

from .corpus import CorpusItem, CorpusManifest, ingest, load_bitstring, load_events, manifest_corpus
from .pipeline import (
    Settings,
    compare_compressors,
    compare_measures,
    run_pipeline,
    sweep_offset,
)
from .synthetic import make_synthetic_corpus

__all__ = [
    "CorpusItem",
    "CorpusManifest",
    "Settings",
    "compare_compressors",
    "compare_measures",
    "ingest",
    "load_bitstring",
    "load_events",
    "make_synthetic_corpus",
    "manifest_corpus",
    "run_pipeline",
    "sweep_offset",
]
