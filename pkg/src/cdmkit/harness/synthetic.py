"""Deterministic synthetic corpora for end-to-end testing.

Each class gets a pool of eight characteristic motifs: short note
patterns (4 to 16 semiquaver steps) confined to a class-specific pitch
band. A piece is 256 steps of motifs sampled from its class pool, with
10% of the notes replaced by random pitches anywhere on the keyboard.
Pieces from one class therefore share verbatim patterns that a block-sort
compressor can exploit, while classes differ in both material and
register. Everything derives from one seed.
"""

import random
from pathlib import Path

from ..encoding import PITCH_MAX, PITCH_MIN, NoteEvent, serialize_events

PIECE_STEPS = 256
MOTIFS_PER_CLASS = 8
NOISE_RATE = 0.10
_BAND_WIDTH = 24
_NOTE_PROB = 0.6
_DURATIONS = (1, 1, 2, 2, 4)


def _class_band(class_index: int, n_classes: int) -> tuple[int, int]:
    span = (PITCH_MAX - _BAND_WIDTH + 1) - PITCH_MIN
    if n_classes == 1:
        lo = PITCH_MIN + span // 2
    else:
        lo = PITCH_MIN + (class_index * span) // (n_classes - 1)
    return lo, lo + _BAND_WIDTH - 1


def _make_motif(rng: random.Random, lo: int, hi: int) -> tuple[int, list]:
    length = rng.randint(4, 16)
    notes = []
    for step in range(length):
        if rng.random() < _NOTE_PROB:
            notes.append((step, rng.randint(lo, hi), rng.choice(_DURATIONS)))
    if not notes:
        notes.append((0, rng.randint(lo, hi), rng.choice(_DURATIONS)))
    return length, notes


def _make_piece(rng: random.Random, motifs: list) -> list[NoteEvent]:
    raw: list[tuple[int, int, int]] = []
    pos = 0
    while pos < PIECE_STEPS:
        length, notes = motifs[rng.randrange(len(motifs))]
        for rel, pitch, duration in notes:
            onset = pos + rel
            if onset >= PIECE_STEPS:
                continue
            raw.append((pitch, onset, min(duration, PIECE_STEPS - onset)))
        pos += length
    noisy = []
    for pitch, onset, duration in raw:
        if rng.random() < NOISE_RATE:
            pitch = rng.randint(PITCH_MIN, PITCH_MAX)
        noisy.append(NoteEvent(pitch=pitch, onset=onset, duration=duration))
    noisy.sort(key=lambda e: (e.onset, e.pitch))
    return noisy


def make_synthetic_corpus(
    out_dir: str | Path,
    n_classes: int = 5,
    pieces_per_class: int = 15,
    seed: int = 0,
) -> Path:
    """Write the corpus under out_dir in the ingest layout; returns the root."""
    if n_classes < 2:
        raise ValueError("need at least 2 classes")
    if pieces_per_class < 1:
        raise ValueError("need at least 1 piece per class")
    rng = random.Random(seed)
    root = Path(out_dir)
    root.mkdir(parents=True, exist_ok=True)
    for c in range(n_classes):
        lo, hi = _class_band(c, n_classes)
        motifs = [_make_motif(rng, lo, hi) for _ in range(MOTIFS_PER_CLASS)]
        class_dir = root / f"class{c}"
        class_dir.mkdir(exist_ok=True)
        for i in range(pieces_per_class):
            events = _make_piece(rng, motifs)
            path = class_dir / f"piece{i:02d}.json"
            path.write_bytes(serialize_events(events))
    return root
