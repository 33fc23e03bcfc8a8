"""Command-line harness.

Subcommands: calibrate, encode, distances, classify, compare-compressors,
compare-measures, sweep-offset, make-synthetic. Shared flags may also be
given in a JSON config file (--config); explicit flags win over config
values, config values win over built-in defaults.
"""

import argparse
import json
import shlex
import sys
from pathlib import Path

from ..calibration import calibration_points, estimate_offset, fit_line
from ..classify import leave_one_out
from ..compressor import (
    KIND_EXTERNAL,
    CompressorSpec,
    SizeCache,
    blocksort_spec,
    lz_spec,
)
from ..exceptions import (
    CalibrationError,
    CorpusError,
    ExternalCompressorError,
    OffsetTooLargeError,
)
from ..measures import MeasureSpec, pairwise_matrix
from ..stats import ConfusionCounts
from .corpus import ingest, load_bitstring, manifest_corpus
from .pipeline import (
    Settings,
    compare_compressors,
    compare_measures,
    run_pipeline,
    sweep_offset,
)
from .reports import (
    format_confusion,
    format_methods,
    format_sweep,
    loo_summary,
    read_matrix,
    write_json,
    write_loo_csv,
    write_matrix_csv,
    write_matrix_sidecar,
    write_sweep_csv,
)
from .synthetic import make_synthetic_corpus

_CONFIG_KEYS = (
    "compressor",
    "measure",
    "offset",
    "k",
    "seed",
    "jobs",
    "cache_path",
    "out_dir",
    "external",
)
_DEFAULTS = {
    "compressor": "blocksort",
    "measure": "cdm",
    "offset": None,
    "k": 5,
    "seed": 0,
    "jobs": 1,
    "cache_path": None,
    "out_dir": None,
    "external": None,
}


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--compressor",
        choices=["blocksort", "lz", "external"],
        help="compressor to measure sizes with (default blocksort)",
    )
    common.add_argument(
        "--external-id", help="spec id for --compressor external"
    )
    common.add_argument(
        "--external-template",
        help="external command with {in} and {out} placeholders, shell-quoted",
    )
    common.add_argument(
        "--measure", choices=["cdm", "cdm-offset", "ncd"],
        help="dissimilarity measure (default cdm)",
    )
    common.add_argument("--offset", type=int, help="offset for cdm-offset")
    common.add_argument("--k", type=int, help="neighbors for K-NN (default 5)")
    common.add_argument("--seed", type=int, help="seed for anything random")
    common.add_argument("--jobs", type=int, help="parallel compression jobs")
    common.add_argument("--cache-path", help="persistent size-cache CSV")
    common.add_argument("--out-dir", help="directory for result files")
    common.add_argument("--config", help="JSON config file with these keys")
    return common


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    doc = json.loads(Path(path).read_text())
    if not isinstance(doc, dict):
        raise ValueError("config must be a JSON object")
    unknown = set(doc) - set(_CONFIG_KEYS)
    if unknown:
        raise ValueError(f"unknown config key(s): {', '.join(sorted(unknown))}")
    return doc


def _merged(args: argparse.Namespace) -> dict:
    config = _load_config(getattr(args, "config", None))
    merged = dict(_DEFAULTS)
    merged.update(config)
    for key in _CONFIG_KEYS:
        if key == "external":
            continue
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    if getattr(args, "external_id", None) or getattr(args, "external_template", None):
        merged["external"] = {
            "id": getattr(args, "external_id", None),
            "template": getattr(args, "external_template", None),
        }
    return merged


def _compressor_spec(merged: dict) -> CompressorSpec:
    name = merged["compressor"]
    if name == "blocksort":
        return blocksort_spec()
    if name == "lz":
        return lz_spec()
    external = merged.get("external") or {}
    template = external.get("template")
    if template is None:
        raise ValueError(
            "external compressor needs --external-template or config external.template"
        )
    if isinstance(template, str):
        template = tuple(shlex.split(template))
    else:
        template = tuple(template)
    return CompressorSpec(
        id=external.get("id") or "external",
        kind=KIND_EXTERNAL,
        command_template=template,
    )


def _measure_spec(merged: dict) -> MeasureSpec:
    kind = merged["measure"]
    if kind == "cdm-offset":
        if merged["offset"] is None:
            raise ValueError("cdm-offset needs --offset")
        return MeasureSpec(kind=kind, offset=merged["offset"])
    return MeasureSpec(kind=kind)


def _settings(merged: dict, compressor=None, measure=None) -> Settings:
    return Settings(
        compressor=compressor if compressor is not None else _compressor_spec(merged),
        measure=measure if measure is not None else _measure_spec(merged),
        k=merged["k"],
        seed=merged["seed"],
        jobs=merged["jobs"],
        cache_path=merged["cache_path"],
        out_dir=merged["out_dir"],
    )


def _out_dir(merged: dict) -> Path | None:
    if merged["out_dir"] is None:
        return None
    out = Path(merged["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _cmd_make_synthetic(args) -> int:
    merged = _merged(args)
    out = merged["out_dir"]
    if out is None:
        raise ValueError("make-synthetic needs --out-dir")
    root = make_synthetic_corpus(
        out, n_classes=args.classes, pieces_per_class=args.pieces,
        seed=merged["seed"],
    )
    n_files = sum(1 for _ in root.glob("*/*.json"))
    print(f"wrote {n_files} pieces in {args.classes} classes under {root}")
    return 0


def _cmd_calibrate(args) -> int:
    merged = _merged(args)
    spec = _compressor_spec(merged)
    cache = SizeCache(merged["cache_path"])
    points = calibration_points(
        spec,
        max_len=args.max_len,
        trials_per_length=args.trials,
        seed=merged["seed"],
        cache=cache,
        jobs=merged["jobs"],
    )
    model = fit_line(points, compressor_id=spec.id)
    doc = {
        "compressor_id": model.compressor_id,
        "slope": model.slope,
        "intercept": model.intercept,
        "offset": model.offset,
        "max_len": args.max_len,
        "trials_per_length": args.trials,
        "seed": merged["seed"],
    }
    print(json.dumps(doc, indent=2))
    out = _out_dir(merged)
    if out is not None:
        write_json(doc, out / "offset.json")
        with open(out / "calibration.csv", "w") as fh:
            fh.write("length,mean_size\n")
            for p in points:
                fh.write(f"{p.input_length},{p.mean_size:.12g}\n")
    return 0


def _cmd_encode(args) -> int:
    merged = _merged(args)
    out = _out_dir(merged)
    if out is None:
        raise ValueError("encode needs --out-dir")
    src = Path(args.path)
    written = 0
    if src.is_dir():
        manifest = ingest(src)
        for item in manifest.items:
            target = out / item.class_label / (Path(item.path).stem + ".txt")
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(load_bitstring(item.path))
            written += 1
    else:
        target = out / (src.stem + ".txt")
        target.write_text(load_bitstring(src))
        written = 1
    print(f"encoded {written} score(s) into {out}")
    return 0


def _cmd_distances(args) -> int:
    merged = _merged(args)
    settings = _settings(merged)
    manifest = ingest(args.corpus)
    corpus = manifest_corpus(manifest)
    matrix = pairwise_matrix(
        corpus,
        settings.compressor,
        settings.measure,
        cache=settings.make_cache(),
        jobs=settings.jobs,
    )
    out = _out_dir(merged)
    if out is None:
        write_matrix_csv(matrix, sys.stdout)
    else:
        write_matrix_csv(matrix, out / "matrix.csv")
        write_matrix_sidecar(matrix, out / "matrix.meta.json")
        print(f"wrote {matrix.n}x{matrix.n} matrix to {out / 'matrix.csv'}")
    return 0


def _cmd_classify(args) -> int:
    merged = _merged(args)
    settings = _settings(merged)
    if args.matrix is not None:
        csv_path = Path(args.matrix)
        sidecar = csv_path.with_name(csv_path.stem + ".meta.json")
        matrix = read_matrix(csv_path, sidecar)
        result = leave_one_out(matrix, k=settings.k)
        out = _out_dir(merged)
        if out is not None:
            write_loo_csv(result, out / "loo.csv")
            write_json(loo_summary(result), out / "summary.json")
    elif args.corpus is not None:
        manifest = ingest(args.corpus)
        _, result = run_pipeline(manifest, settings)
    else:
        raise ValueError("classify needs a corpus root or --matrix")
    print(
        f"accuracy {result.accuracy:.6g} "
        f"({result.correct_count}/{result.n}), k={result.k}"
    )
    return 0


def _cmd_compare_compressors(args) -> int:
    merged = _merged(args)
    names = [name.strip() for name in args.compressors.split(",") if name.strip()]
    specs = [_compressor_spec(dict(merged, compressor=name)) for name in names]
    settings = _settings(merged, compressor=specs[0])
    manifest = ingest(args.corpus)
    report = compare_compressors(manifest, specs, settings)
    _print_comparison(report)
    out = _out_dir(merged)
    if out is not None:
        report = dict(report)
        report.pop("results", None)
        write_json(report, out / "compare_compressors.json")
    return 0


def _cmd_compare_measures(args) -> int:
    merged = _merged(args)
    spec = _compressor_spec(merged)
    offset = merged["offset"]
    if offset is None:
        model = estimate_offset(
            spec,
            seed=merged["seed"],
            cache=SizeCache(merged["cache_path"]),
            jobs=merged["jobs"],
        )
        offset = model.offset
        print(f"calibrated offset {offset} for {spec.id}")
    measures = [
        MeasureSpec(kind="cdm"),
        MeasureSpec(kind="cdm-offset", offset=offset),
    ]
    if args.with_ncd:
        measures.append(MeasureSpec(kind="ncd"))
    settings = _settings(merged, compressor=spec, measure=measures[0])
    manifest = ingest(args.corpus)
    report = compare_measures(manifest, measures, settings)
    _print_comparison(report)
    out = _out_dir(merged)
    if out is not None:
        report = dict(report)
        report.pop("results", None)
        report["offset"] = offset
        write_json(report, out / "compare_measures.json")
    return 0


def _cmd_sweep_offset(args) -> int:
    merged = _merged(args)
    offsets = [int(x) for x in args.offsets.split(",") if x.strip()]
    settings = _settings(merged, measure=MeasureSpec(kind="cdm"))
    manifest = ingest(args.corpus)
    rows = sweep_offset(manifest, offsets, settings)
    print(format_sweep(rows))
    out = _out_dir(merged)
    if out is not None:
        write_sweep_csv(rows, out / "sweep.csv")
        write_json({"rows": rows}, out / "sweep.json")
    return 0


def _print_comparison(report: dict):
    print(format_methods(report["methods"]))
    for comparison in report["comparisons"]:
        counts = ConfusionCounts(
            a=comparison["a"], b=comparison["b"],
            c=comparison["c"], d=comparison["d"],
        )
        print()
        print(
            format_confusion(
                counts,
                comparison["p_value"],
                comparison["method1"],
                comparison["method2"],
            )
        )
    for skip in report.get("skipped", ()):
        print(f"skipped {skip['method']}: {skip['error']}")


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="cdmkit",
        description="compression-based dissimilarity toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("make-synthetic", parents=[common],
                       help="generate a deterministic synthetic corpus")
    p.add_argument("--classes", type=int, default=5)
    p.add_argument("--pieces", type=int, default=15)
    p.set_defaults(func=_cmd_make_synthetic)

    p = sub.add_parser("calibrate", parents=[common],
                       help="estimate a compressor's constant offset")
    p.add_argument("--max-len", type=int, default=100)
    p.add_argument("--trials", type=int, default=5)
    p.set_defaults(func=_cmd_calibrate)

    p = sub.add_parser("encode", parents=[common],
                       help="encode scores to '0'/'1' text")
    p.add_argument("path", help="score file or corpus root")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("distances", parents=[common],
                       help="pairwise dissimilarity matrix over a corpus")
    p.add_argument("corpus", help="corpus root directory")
    p.set_defaults(func=_cmd_distances)

    p = sub.add_parser("classify", parents=[common],
                       help="leave-one-out K-NN over a corpus")
    p.add_argument("corpus", nargs="?", help="corpus root directory")
    p.add_argument("--matrix", help="reuse a persisted matrix CSV")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("compare-compressors", parents=[common],
                       help="same corpus, one run per compressor, McNemar")
    p.add_argument("corpus", help="corpus root directory")
    p.add_argument("--compressors", default="blocksort,lz",
                   help="comma-separated compressor names")
    p.set_defaults(func=_cmd_compare_compressors)

    p = sub.add_parser("compare-measures", parents=[common],
                       help="plain vs offset-corrected measure, McNemar")
    p.add_argument("corpus", help="corpus root directory")
    p.add_argument("--with-ncd", action="store_true",
                   help="include ncd as a third method")
    p.set_defaults(func=_cmd_compare_measures)

    p = sub.add_parser("sweep-offset", parents=[common],
                       help="classification accuracy across offsets")
    p.add_argument("corpus", help="corpus root directory")
    p.add_argument("--offsets", default="0,20,40,45,60,80,100",
                   help="comma-separated offsets")
    p.set_defaults(func=_cmd_sweep_offset)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        ValueError,
        CorpusError,
        CalibrationError,
        ExternalCompressorError,
        OffsetTooLargeError,
        FileNotFoundError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
