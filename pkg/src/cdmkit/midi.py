"""Byte-level Standard MIDI File reader producing raw tick-domain notes.

Reads format 0 and 1 files with metrical (pulses-per-quarter) timing.
Note-ons pair with the next matching note-off on the same channel and
pitch, first-on first-off; velocity-zero note-ons count as note-offs.
Tracks merge onto one absolute-tick timeline. Tempo, velocity, pedal and
every other controller are ignored: the semiquaver grid is metric, so
wall-clock tempo never matters.
"""

import warnings
from collections import deque

from .exceptions import MidiFormatError

_NOTE_OFF = 0x80
_NOTE_ON = 0x90
# data byte counts for channel message kinds 0x80..0xE0
_DATA_BYTES = {
    0x80: 2,
    0x90: 2,
    0xA0: 2,
    0xB0: 2,
    0xC0: 1,
    0xD0: 1,
    0xE0: 2,
}


def _read_u32(data: bytes, pos: int) -> int:
    if pos + 4 > len(data):
        raise MidiFormatError("truncated chunk header")
    return int.from_bytes(data[pos : pos + 4], "big")


def _read_varint(data: bytes, pos: int) -> tuple[int, int]:
    value = 0
    for i in range(4):
        if pos >= len(data):
            raise MidiFormatError("truncated variable-length quantity")
        byte = data[pos]
        pos += 1
        value = (value << 7) | (byte & 0x7F)
        if not byte & 0x80:
            return value, pos
    raise MidiFormatError("variable-length quantity longer than 4 bytes")


def _parse_track(chunk: bytes) -> tuple[list[tuple[int, int, int]], int]:
    """One MTrk payload -> (notes as (pitch, onset, duration) ticks, unpaired count)."""
    notes: list[tuple[int, int, int]] = []
    pending: dict[tuple[int, int], deque[int]] = {}
    pos = 0
    tick = 0
    running: int | None = None
    while pos < len(chunk):
        delta, pos = _read_varint(chunk, pos)
        tick += delta
        if pos >= len(chunk):
            raise MidiFormatError("event truncated after delta time")
        status = chunk[pos]
        if status < 0x80:
            if running is None:
                raise MidiFormatError("data byte without running status")
            status = running
        else:
            pos += 1
        if status == 0xFF:
            running = None
            if pos >= len(chunk):
                raise MidiFormatError("truncated meta event")
            meta_type = chunk[pos]
            pos += 1
            length, pos = _read_varint(chunk, pos)
            if pos + length > len(chunk):
                raise MidiFormatError("truncated meta payload")
            pos += length
            if meta_type == 0x2F:
                break
            continue
        if status in (0xF0, 0xF7):
            running = None
            length, pos = _read_varint(chunk, pos)
            if pos + length > len(chunk):
                raise MidiFormatError("truncated sysex payload")
            pos += length
            continue
        if status >= 0xF0:
            raise MidiFormatError(f"unsupported event status 0x{status:02X}")
        running = status
        kind = status & 0xF0
        channel = status & 0x0F
        ndata = _DATA_BYTES[kind]
        if pos + ndata > len(chunk):
            raise MidiFormatError("truncated channel message")
        data1 = chunk[pos]
        data2 = chunk[pos + 1] if ndata == 2 else 0
        if data1 >= 0x80 or data2 >= 0x80:
            raise MidiFormatError("data byte with high bit set")
        pos += ndata
        if kind == _NOTE_ON and data2 > 0:
            pending.setdefault((channel, data1), deque()).append(tick)
        elif kind == _NOTE_OFF or (kind == _NOTE_ON and data2 == 0):
            queue = pending.get((channel, data1))
            if queue:
                onset = queue.popleft()
                notes.append((data1, onset, tick - onset))
            # a stray note-off has nothing to close; drop it
    unpaired = 0
    for (channel, pitch), queue in pending.items():
        for onset in queue:
            notes.append((pitch, onset, max(0, tick - onset)))
            unpaired += 1
    return notes, unpaired


def parse_midi(data: bytes) -> tuple[list[tuple[int, int, int]], int]:
    """Parse an SMF; returns ((pitch, onset_ticks, duration_ticks) notes, ppq)."""
    if len(data) < 14 or data[:4] != b"MThd":
        raise MidiFormatError("not a Standard MIDI File (missing MThd)")
    header_len = _read_u32(data, 4)
    if header_len < 6:
        raise MidiFormatError(f"header chunk too short ({header_len})")
    fmt = int.from_bytes(data[8:10], "big")
    n_tracks = int.from_bytes(data[10:12], "big")
    division = int.from_bytes(data[12:14], "big")
    if fmt not in (0, 1):
        raise MidiFormatError(f"unsupported SMF format {fmt}")
    if division & 0x8000:
        raise MidiFormatError("SMPTE time division is not supported")
    if division == 0:
        raise MidiFormatError("zero time division")
    ppq = division
    pos = 8 + header_len
    notes: list[tuple[int, int, int]] = []
    unpaired = 0
    seen_tracks = 0
    while seen_tracks < n_tracks and pos < len(data):
        if pos + 8 > len(data):
            raise MidiFormatError("truncated chunk header")
        chunk_type = data[pos : pos + 4]
        chunk_len = _read_u32(data, pos + 4)
        pos += 8
        if pos + chunk_len > len(data):
            raise MidiFormatError(f"truncated {chunk_type!r} chunk")
        if chunk_type == b"MTrk":
            track_notes, track_unpaired = _parse_track(data[pos : pos + chunk_len])
            notes.extend(track_notes)
            unpaired += track_unpaired
            seen_tracks += 1
        pos += chunk_len
    if seen_tracks < n_tracks:
        raise MidiFormatError(
            f"header promises {n_tracks} track(s), found {seen_tracks}"
        )
    if unpaired:
        warnings.warn(
            f"{unpaired} unpaired note-on(s) closed at track end",
            stacklevel=2,
        )
    notes.sort(key=lambda note: (note[1], note[0], note[2]))
    return notes, ppq
