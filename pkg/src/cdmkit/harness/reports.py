"""Report emission: CSV matrices and results, JSON sidecars, text tables."""

import csv
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from ..classify import LooResult
from ..measures import DistanceMatrix
from ..stats import ConfusionCounts

_CELL_FORMAT = "{:.17g}"  # 17 significant digits, float64 round-trips exactly


def write_matrix_csv(matrix: DistanceMatrix, path):
    """Write the matrix as CSV to a path or an open text stream."""
    ids = matrix.item_ids

    def emit(fh):
        writer = csv.writer(fh)
        writer.writerow(["item_id", *ids])
        for item_id, row in zip(ids, matrix.values):
            writer.writerow([item_id, *(_CELL_FORMAT.format(v) for v in row)])

    if hasattr(path, "write"):
        emit(path)
    else:
        with open(path, "w", newline="") as fh:
            emit(fh)


def write_matrix_sidecar(matrix: DistanceMatrix, path: str | Path):
    doc = {
        "provenance": matrix.provenance,
        "labels": [[item_id, label] for item_id, label in matrix.labels],
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def read_matrix(csv_path: str | Path, sidecar_path: str | Path) -> DistanceMatrix:
    doc = json.loads(Path(sidecar_path).read_text())
    labels = [(item_id, label) for item_id, label in doc["labels"]]
    with open(csv_path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = rows[0][1:]
    if header != [item_id for item_id, _ in labels]:
        raise ValueError("matrix CSV and sidecar disagree on item ids")
    values = np.array(
        [[float(cell) for cell in row[1:]] for row in rows[1:]], dtype=np.float64
    )
    return DistanceMatrix(
        labels=labels, values=values, provenance=doc.get("provenance", {})
    )


def write_loo_csv(result: LooResult, path: str | Path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["item_id", "true_label", "predicted_label", "correct"])
        for item in result.per_item:
            writer.writerow(
                [
                    item.item_id,
                    item.true_label,
                    item.predicted_label,
                    "true" if item.correct else "false",
                ]
            )


def loo_summary(result: LooResult) -> dict:
    return {
        "n": result.n,
        "k": result.k,
        "correct": result.correct_count,
        "accuracy": result.accuracy,
    }


def write_json(doc: dict, path: str | Path):
    Path(path).write_text(json.dumps(doc, indent=2, default=_json_default) + "\n")


def _json_default(value):
    if isinstance(value, Fraction):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def format_confusion(
    counts: ConfusionCounts,
    p_value: Fraction,
    name1: str,
    name2: str,
) -> str:
    """The paired 2x2 layout: rows are method 1, columns method 2."""
    rows = [
        ["", f"{name2} correct", f"{name2} incorrect"],
        [f"{name1} correct", str(counts.a), str(counts.b)],
        [f"{name1} incorrect", str(counts.c), str(counts.d)],
    ]
    widths = [max(len(row[i]) for row in rows) for i in range(3)]
    lines = [
        "  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    ]
    lines.append(
        f"N = {counts.n}    p = {float(p_value):.6g} "
        f"(one-sided test: {name2} better)"
    )
    return "\n".join(lines)


def format_sweep(rows: list[dict]) -> str:
    """Offset sweep in the two-line offset/correct layout."""
    header = ["offset"] + [str(r["offset"]) for r in rows]
    body = ["correct"] + [
        str(r["correct"]) if r["valid"] else "-" for r in rows
    ]
    widths = [max(len(h), len(b)) for h, b in zip(header, body)]
    lines = [
        "  ".join(cell.rjust(w) for cell, w in zip(header, widths)),
        "  ".join(cell.rjust(w) for cell, w in zip(body, widths)),
    ]
    total = rows[0]["total"] if rows else 0
    lines.append(f"total = {total}")
    notes = [f"offset {r['offset']}: {r['note']}" for r in rows if not r["valid"]]
    lines.extend(notes)
    return "\n".join(lines)


def write_sweep_csv(rows: list[dict], path: str | Path):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["offset", "correct", "total", "valid", "note"])
        for r in rows:
            writer.writerow(
                [r["offset"], r["correct"], r["total"],
                 "true" if r["valid"] else "false", r["note"]]
            )


def format_methods(entries: list[dict]) -> str:
    """Per-method accuracy table (method, correct, total, accuracy)."""
    rows = [["method", "correct", "total", "accuracy"]]
    for e in entries:
        rows.append(
            [e["method"], str(e["correct"]), str(e["total"]),
             f"{e['accuracy']:.4f}"]
        )
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        for row in rows
    )
