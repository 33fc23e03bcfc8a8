"""Corpus discovery and loading.

A corpus root holds one subdirectory per class label, each containing
score files (.mid/.midi or .json note events). Ingestion is deterministic
(sorted by label then filename); files that fail to parse are skipped
with a warning so one bad score never sinks a whole experiment.
"""

import warnings
from dataclasses import dataclass, field
from pathlib import Path

from ..encoding import NoteEvent, encode_events, parse_events_json, quantize
from ..exceptions import CorpusError
from ..midi import parse_midi

_MIDI_SUFFIXES = {".mid", ".midi"}
_JSON_SUFFIXES = {".json"}


@dataclass(frozen=True)
class CorpusItem:
    item_id: str
    class_label: str
    format: str
    path: str


@dataclass
class CorpusManifest:
    root: str
    items: list[CorpusItem]
    settings: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def classes(self) -> list[str]:
        return sorted({item.class_label for item in self.items})


def load_events(path: str | Path) -> list[NoteEvent]:
    """Parse one score file into semiquaver-grid note events."""
    path = Path(path)
    suffix = path.suffix.lower()
    data = path.read_bytes()
    if suffix in _JSON_SUFFIXES:
        return parse_events_json(data)
    if suffix in _MIDI_SUFFIXES:
        raw_notes, ppq = parse_midi(data)
        events, dropped = quantize(raw_notes, ppq)
        if dropped:
            warnings.warn(
                f"{path}: dropped {dropped} note(s) outside the 88-key range",
                stacklevel=2,
            )
        return events
    raise CorpusError(f"unsupported score format: {path}")


def load_bitstring(path: str | Path) -> str:
    return encode_events(load_events(path))


def ingest(root: str | Path) -> CorpusManifest:
    """Scan a corpus root into a manifest, validating every file parses."""
    root = Path(root)
    if not root.is_dir():
        raise CorpusError(f"corpus root is not a directory: {root}")
    class_dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not class_dirs:
        raise CorpusError(f"corpus root has no class directories: {root}")
    items: list[CorpusItem] = []
    seen_ids: set[str] = set()
    for class_dir in class_dirs:
        label = class_dir.name
        paths = sorted(
            p
            for p in class_dir.iterdir()
            if p.is_file() and p.suffix.lower() in _MIDI_SUFFIXES | _JSON_SUFFIXES
        )
        if not paths:
            raise CorpusError(f"class directory has no score files: {class_dir}")
        kept = 0
        for path in paths:
            try:
                load_events(path)
            except Exception as exc:
                warnings.warn(f"skipping unparseable {path}: {exc}", stacklevel=2)
                continue
            item_id = f"{label}/{path.stem}"
            if item_id in seen_ids:
                raise CorpusError(f"duplicate item id {item_id!r}")
            seen_ids.add(item_id)
            fmt = "json" if path.suffix.lower() in _JSON_SUFFIXES else "midi"
            items.append(
                CorpusItem(
                    item_id=item_id, class_label=label, format=fmt, path=str(path)
                )
            )
            kept += 1
        if kept == 0:
            raise CorpusError(f"no parseable score files in {class_dir}")
    return CorpusManifest(root=str(root), items=items)


def manifest_corpus(manifest: CorpusManifest) -> list[tuple[str, str, bytes]]:
    """Encode every manifest item; the ASCII bytes are what gets compressed."""
    return [
        (
            item.item_id,
            item.class_label,
            load_bitstring(item.path).encode("ascii"),
        )
        for item in manifest.items
    ]
