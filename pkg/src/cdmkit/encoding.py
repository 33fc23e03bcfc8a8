"""Score encoding: note events -> 88-key piano roll -> '0'/'1' string.

Time is quantized to the semiquaver (sixteenth-note) grid. Each step
becomes an 88-bit key-state vector covering the piano range A0 (MIDI 21,
bit 0) through C8 (MIDI 108, bit 87); held notes repeat their vector on
every covered step. The vectors are written lowest pitch first and
concatenated without separators, so transposing a score by k semitones
shifts the whole string by exactly k characters.
"""

import json
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import EventSchemaError, MidiFormatError, TranspositionRangeError

PITCH_MIN = 21
PITCH_MAX = 108
N_KEYS = PITCH_MAX - PITCH_MIN + 1


@dataclass(frozen=True)
class NoteEvent:
    """One note on the semiquaver grid."""

    pitch: int
    onset: int
    duration: int

    def __post_init__(self):
        if not PITCH_MIN <= self.pitch <= PITCH_MAX:
            raise ValueError(
                f"pitch {self.pitch} outside piano range "
                f"[{PITCH_MIN}, {PITCH_MAX}]"
            )
        if self.onset < 0:
            raise ValueError(f"onset must be >= 0, got {self.onset}")
        if self.duration < 1:
            raise ValueError(f"duration must be >= 1, got {self.duration}")


@dataclass
class PianoRoll:
    """Boolean (steps, 88) array; column 0 is A0, column 87 is C8."""

    steps: np.ndarray

    def __post_init__(self):
        self.steps = np.asarray(self.steps, dtype=bool)
        if self.steps.ndim != 2 or self.steps.shape[1] != N_KEYS:
            raise ValueError(f"roll must be (n, {N_KEYS}), got {self.steps.shape}")

    @property
    def n_steps(self) -> int:
        return self.steps.shape[0]


def quantize(
    raw_notes: list[tuple[int, int, int]], ppq: int
) -> tuple[list[NoteEvent], int]:
    """Snap (pitch, onset_ticks, duration_ticks) notes to the semiquaver grid.

    One semiquaver is ppq/4 ticks; onsets and durations round half-up and
    durations clamp to at least one step. Returns the events plus the
    count of notes dropped for being outside the 88-key range.
    """
    if ppq <= 0:
        raise MidiFormatError(f"ppq must be positive, got {ppq}")
    events = []
    dropped = 0
    for pitch, onset_ticks, duration_ticks in raw_notes:
        if not PITCH_MIN <= pitch <= PITCH_MAX:
            dropped += 1
            continue
        if onset_ticks < 0 or duration_ticks < 0:
            raise ValueError("negative tick values")
        onset = (8 * onset_ticks + ppq) // (2 * ppq)
        duration = max(1, (8 * duration_ticks + ppq) // (2 * ppq))
        events.append(NoteEvent(pitch=pitch, onset=onset, duration=duration))
    return events, dropped


def to_roll(events: list[NoteEvent]) -> PianoRoll:
    """OR all events into key-state vectors, one per semiquaver step."""
    if not events:
        return PianoRoll(steps=np.zeros((0, N_KEYS), dtype=bool))
    n_steps = max(e.onset + e.duration for e in events)
    steps = np.zeros((n_steps, N_KEYS), dtype=bool)
    for e in events:
        steps[e.onset : e.onset + e.duration, e.pitch - PITCH_MIN] = True
    return PianoRoll(steps=steps)


def to_bitstring(roll: PianoRoll) -> str:
    """Serialize a roll as '0'/'1' text, 88 characters per step."""
    chars = np.full(roll.steps.size, ord("0"), dtype=np.uint8)
    chars[roll.steps.reshape(-1)] = ord("1")
    return chars.tobytes().decode("ascii")


def encode_events(events: list[NoteEvent]) -> str:
    return to_bitstring(to_roll(events))


def transpose(events: list[NoteEvent], k: int) -> list[NoteEvent]:
    """Shift every pitch by k semitones; timing untouched."""
    bad = [e for e in events if not PITCH_MIN <= e.pitch + k <= PITCH_MAX]
    if bad:
        shown = ", ".join(f"pitch {e.pitch} at onset {e.onset}" for e in bad[:5])
        raise TranspositionRangeError(
            f"transposing by {k} leaves the keyboard for {len(bad)} event(s): "
            f"{shown}",
            events=bad,
        )
    return [
        NoteEvent(pitch=e.pitch + k, onset=e.onset, duration=e.duration)
        for e in events
    ]


def parse_events_json(data: bytes | str) -> list[NoteEvent]:
    """Read a JSON array of {pitch, onset, duration} objects."""
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise EventSchemaError(None, f"invalid JSON: {exc}") from None
    if not isinstance(doc, list):
        raise EventSchemaError(None, "top level must be a JSON array")
    events = []
    for i, rec in enumerate(doc):
        if not isinstance(rec, dict):
            raise EventSchemaError(i, "expected an object")
        missing = {"pitch", "onset", "duration"} - rec.keys()
        if missing:
            raise EventSchemaError(i, f"missing field(s): {', '.join(sorted(missing))}")
        vals = {}
        for key in ("pitch", "onset", "duration"):
            v = rec[key]
            if isinstance(v, bool) or not isinstance(v, int):
                raise EventSchemaError(i, f"{key} must be an integer, got {v!r}")
            vals[key] = v
        try:
            events.append(NoteEvent(**vals))
        except ValueError as exc:
            raise EventSchemaError(i, str(exc)) from None
    return events


def serialize_events(events: list[NoteEvent]) -> bytes:
    """JSON bytes that parse_events_json reads back unchanged."""
    return json.dumps([asdict(e) for e in events], indent=0).encode("ascii")
