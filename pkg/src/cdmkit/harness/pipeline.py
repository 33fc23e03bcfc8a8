"""Experiment pipelines: encode, compress, classify, compare, sweep.

Every pipeline is deterministic given the corpus bytes and settings.
Compressed sizes flow through one shared cache, so reruns and offset
sweeps never recompress; only the measure arithmetic is redone.
"""

import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

from ..classify import LooResult, leave_one_out
from ..compressor import CompressorSpec, SizeCache, blocksort_spec
from ..exceptions import ExternalCompressorError, OffsetTooLargeError
from ..measures import (
    DistanceMatrix,
    MeasureSpec,
    collect_sizes,
    matrix_from_sizes,
)
from ..stats import compare_methods
from .corpus import CorpusManifest, manifest_corpus
from .reports import (
    loo_summary,
    write_json,
    write_loo_csv,
    write_matrix_csv,
    write_matrix_sidecar,
)


@dataclass(frozen=True)
class Settings:
    compressor: CompressorSpec = field(default_factory=blocksort_spec)
    measure: MeasureSpec = field(default_factory=lambda: MeasureSpec(kind="cdm"))
    k: int = 5
    seed: int = 0
    jobs: int = 1
    cache_path: str | None = None
    out_dir: str | None = None

    def make_cache(self) -> SizeCache:
        return SizeCache(self.cache_path)


def _provenance(settings: Settings) -> dict:
    return {
        "compressor": settings.compressor.id,
        "measure": settings.measure.kind,
        "offset": settings.measure.offset,
        "k": settings.k,
        "seed": settings.seed,
    }


def run_pipeline(
    manifest: CorpusManifest,
    settings: Settings,
    cache: SizeCache | None = None,
) -> tuple[DistanceMatrix, LooResult]:
    """encode -> compressed sizes -> distance matrix -> leave-one-out."""
    corpus = manifest_corpus(manifest)
    cache = cache if cache is not None else settings.make_cache()
    labels = [(item_id, label) for item_id, label, _ in corpus]
    singles, pair_sizes = collect_sizes(
        corpus, settings.compressor, cache=cache, jobs=settings.jobs
    )
    matrix = matrix_from_sizes(
        labels, singles, pair_sizes, settings.measure,
        provenance=_provenance(settings),
    )
    result = leave_one_out(matrix, k=settings.k)
    if settings.out_dir is not None:
        out = Path(settings.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        write_matrix_csv(matrix, out / "matrix.csv")
        write_matrix_sidecar(matrix, out / "matrix.meta.json")
        write_loo_csv(result, out / "loo.csv")
        write_json(loo_summary(result), out / "summary.json")
    return matrix, result


def sweep_offset(
    manifest: CorpusManifest,
    offsets: list[int],
    settings: Settings,
    cache: SizeCache | None = None,
) -> list[dict]:
    """One leave-one-out run per offset over a single set of sizes.

    Rows are {offset, correct, total, valid, note}; an offset at or above
    some compressed size yields an invalid row, not an exception.
    """
    if any(o < 0 for o in offsets):
        raise ValueError("offsets must be >= 0")
    corpus = manifest_corpus(manifest)
    cache = cache if cache is not None else settings.make_cache()
    labels = [(item_id, label) for item_id, label, _ in corpus]
    singles, pair_sizes = collect_sizes(
        corpus, settings.compressor, cache=cache, jobs=settings.jobs
    )
    rows = []
    for offset in offsets:
        measure = MeasureSpec(kind="cdm-offset", offset=offset)
        try:
            matrix = matrix_from_sizes(labels, singles, pair_sizes, measure)
            result = leave_one_out(matrix, k=settings.k)
        except OffsetTooLargeError as exc:
            rows.append(
                {
                    "offset": offset,
                    "correct": None,
                    "total": len(labels),
                    "valid": False,
                    "note": str(exc),
                }
            )
            continue
        rows.append(
            {
                "offset": offset,
                "correct": result.correct_count,
                "total": result.n,
                "valid": True,
                "note": "",
            }
        )
    return rows


def compare_measures(
    manifest: CorpusManifest,
    measures: list[MeasureSpec],
    settings: Settings,
    cache: SizeCache | None = None,
) -> dict:
    """Same sizes, one classification per measure, pairwise McNemar."""
    if len(measures) < 2:
        raise ValueError("need at least 2 measures to compare")
    corpus = manifest_corpus(manifest)
    cache = cache if cache is not None else settings.make_cache()
    labels = [(item_id, label) for item_id, label, _ in corpus]
    singles, pair_sizes = collect_sizes(
        corpus, settings.compressor, cache=cache, jobs=settings.jobs
    )
    results = {}
    for measure in measures:
        matrix = matrix_from_sizes(labels, singles, pair_sizes, measure)
        results[_measure_name(measure)] = leave_one_out(matrix, k=settings.k)
    return _comparison_report(results)


def compare_compressors(
    manifest: CorpusManifest,
    specs: list[CompressorSpec],
    settings: Settings,
    cache: SizeCache | None = None,
) -> dict:
    """One pipeline per compressor spec, pairwise McNemar between them.

    A spec whose external program is missing is reported and skipped;
    the comparison proceeds with whatever succeeded.
    """
    if len(specs) < 2:
        raise ValueError("need at least 2 compressor specs to compare")
    cache = cache if cache is not None else settings.make_cache()
    results: dict[str, LooResult] = {}
    skipped = []
    for spec in specs:
        try:
            _, result = run_pipeline(
                manifest,
                replace(settings, compressor=spec, out_dir=None),
                cache=cache,
            )
        except ExternalCompressorError as exc:
            warnings.warn(f"skipping {spec.id}: {exc}", stacklevel=2)
            skipped.append({"method": spec.id, "error": str(exc)})
            continue
        results[spec.id] = result
    report = _comparison_report(results)
    report["skipped"] = skipped
    return report


def _measure_name(measure: MeasureSpec) -> str:
    if measure.kind == "cdm-offset":
        return f"cdm-offset({measure.offset})"
    return measure.kind


def _comparison_report(results: dict[str, LooResult]) -> dict:
    methods = [
        {
            "method": name,
            "correct": result.correct_count,
            "total": result.n,
            "accuracy": result.accuracy,
        }
        for name, result in results.items()
    ]
    names = list(results)
    comparisons = []
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            comparison = compare_methods(results[names[i]], results[names[j]])
            counts = comparison.counts
            comparisons.append(
                {
                    "method1": names[i],
                    "method2": names[j],
                    "a": counts.a,
                    "b": counts.b,
                    "c": counts.c,
                    "d": counts.d,
                    "n": counts.n,
                    "p_value": comparison.p_value,
                    "better": comparison.better,
                }
            )
    return {"methods": methods, "comparisons": comparisons, "results": results}
