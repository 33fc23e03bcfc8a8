"""Standard MIDI File parser against hand-built byte streams."""

import pytest

from cdmkit.exceptions import MidiFormatError
from cdmkit.midi import parse_midi
from tests.smf import END_OF_TRACK, note_off, note_on, smf, track, vlq


def test_minimal_single_note():
    data = smf(
        480,
        [track(vlq(0) + note_on(0, 60, 64) + vlq(480) + note_off(0, 60))],
    )
    notes, ppq = parse_midi(data)
    assert ppq == 480
    assert notes == [(60, 0, 480)]


def test_two_notes_sequential():
    data = smf(
        96,
        [
            track(
                vlq(0)
                + note_on(0, 60, 80)
                + vlq(96)
                + note_off(0, 60)
                + vlq(0)
                + note_on(0, 62, 80)
                + vlq(48)
                + note_off(0, 62)
            )
        ],
    )
    notes, ppq = parse_midi(data)
    assert ppq == 96
    assert notes == [(60, 0, 96), (62, 96, 48)]


def test_format_1_tracks_merge():
    t1 = track(vlq(0) + note_on(0, 60, 64) + vlq(100) + note_off(0, 60))
    t2 = track(vlq(50) + note_on(1, 72, 64) + vlq(100) + note_off(1, 72))
    notes, _ = parse_midi(smf(480, [t1, t2]))
    assert notes == [(60, 0, 100), (72, 50, 100)]


def test_notes_sorted_by_onset_then_pitch():
    t = track(
        vlq(0)
        + note_on(0, 70, 64)
        + vlq(0)
        + note_on(0, 60, 64)
        + vlq(100)
        + note_off(0, 70)
        + vlq(0)
        + note_off(0, 60)
    )
    notes, _ = parse_midi(smf(480, [t]))
    assert notes == [(60, 0, 100), (70, 0, 100)]


def test_running_status():
    # second note-on omits the status byte
    payload = (
        vlq(0)
        + note_on(0, 60, 64)
        + vlq(0)
        + bytes([64, 64])  # running status: note-on pitch 64
        + vlq(120)
        + note_off(0, 60)
        + vlq(0)
        + bytes([64, 0])  # running status: note-off (0x80 kind)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(60, 0, 120), (64, 0, 120)]


def test_velocity_zero_note_on_is_note_off():
    payload = (
        vlq(0) + note_on(0, 60, 64) + vlq(200) + note_on(0, 60, 0)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(60, 0, 200)]


def test_overlapping_same_pitch_pairs_fifo():
    # two on(60), two off(60): first off closes the first on
    payload = (
        vlq(0)
        + note_on(0, 60, 64)
        + vlq(10)
        + note_on(0, 60, 64)
        + vlq(10)
        + note_off(0, 60)
        + vlq(10)
        + note_off(0, 60)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(60, 0, 20), (60, 10, 20)]


def test_channels_pair_independently():
    payload = (
        vlq(0)
        + note_on(0, 60, 64)
        + vlq(0)
        + note_on(1, 60, 64)
        + vlq(30)
        + note_off(1, 60)
        + vlq(40)
        + note_off(0, 60)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert sorted(notes, key=lambda n: n[2]) == [(60, 0, 30), (60, 0, 70)]


def test_unpaired_note_on_closed_at_track_end():
    # note-on, then end-of-track 333 ticks later with no matching note-off
    t = track(vlq(0) + note_on(0, 60, 64) + vlq(333) + END_OF_TRACK, end=False)
    with pytest.warns(UserWarning, match="unpaired"):
        notes, _ = parse_midi(smf(480, [t]))
    assert notes == [(60, 0, 333)]


def test_stray_note_off_ignored():
    payload = (
        vlq(0)
        + note_off(0, 60)
        + vlq(0)
        + note_on(0, 62, 64)
        + vlq(50)
        + note_off(0, 62)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(62, 0, 50)]


def test_other_channel_messages_skipped():
    payload = (
        vlq(0)
        + bytes([0xB0, 0x40, 0x7F])  # sustain pedal down
        + vlq(0)
        + bytes([0xC0, 0x05])  # program change
        + vlq(0)
        + bytes([0xE0, 0x00, 0x40])  # pitch bend
        + vlq(0)
        + note_on(0, 60, 64)
        + vlq(60)
        + note_off(0, 60)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(60, 0, 60)]


def test_meta_and_sysex_skipped():
    payload = (
        vlq(0)
        + b"\xff\x51\x03\x07\xa1\x20"  # tempo
        + vlq(0)
        + b"\xf0" + vlq(3) + b"\x01\x02\xf7"  # sysex
        + vlq(0)
        + note_on(0, 60, 64)
        + vlq(60)
        + note_off(0, 60)
    )
    notes, _ = parse_midi(smf(480, [track(payload)]))
    assert notes == [(60, 0, 60)]


def test_meta_cancels_running_status():
    payload = (
        vlq(0)
        + note_on(0, 60, 64)
        + vlq(0)
        + b"\xff\x06\x03abc"  # marker meta event
        + vlq(10)
        + bytes([62, 64])  # would need running status, but it was cancelled
    )
    with pytest.raises(MidiFormatError, match="running status"):
        parse_midi(smf(480, [track(payload)]))


def test_data_byte_without_running_status():
    payload = vlq(0) + bytes([60, 64])
    with pytest.raises(MidiFormatError, match="running status"):
        parse_midi(smf(480, [track(payload)]))


def test_alien_chunks_skipped():
    t = track(vlq(0) + note_on(0, 60, 64) + vlq(10) + note_off(0, 60))
    alien = b"XFIH" + (4).to_bytes(4, "big") + b"\x00\x01\x02\x03"
    data = smf(480, [t])
    # splice the alien chunk between header and track
    spliced = data[:14] + alien + data[14:]
    notes, _ = parse_midi(spliced)
    assert notes == [(60, 0, 10)]


def test_not_midi():
    with pytest.raises(MidiFormatError):
        parse_midi(b"RIFFxxxx")
    with pytest.raises(MidiFormatError):
        parse_midi(b"")


def test_smpte_division_rejected():
    data = smf(0x8000 | (25 << 8) | 40, [track(b"")])
    with pytest.raises(MidiFormatError, match="SMPTE"):
        parse_midi(data)


def test_zero_division_rejected():
    with pytest.raises(MidiFormatError, match="zero"):
        parse_midi(smf(0, [track(b"")]))


def test_format_2_rejected():
    data = smf(480, [track(b""), track(b"")], fmt=2)
    with pytest.raises(MidiFormatError, match="format"):
        parse_midi(data)


def test_missing_tracks():
    t = track(vlq(0) + note_on(0, 60, 64) + vlq(10) + note_off(0, 60))
    data = smf(480, [t, t])
    # header says two tracks; drop the second
    truncated = data[: 14 + len(t)]
    with pytest.raises(MidiFormatError, match="track"):
        parse_midi(truncated)


def test_truncated_track_chunk():
    data = smf(480, [track(vlq(0) + note_on(0, 60, 64))])
    with pytest.raises(MidiFormatError):
        parse_midi(data[:-3])


def test_truncated_event():
    # delta then end of chunk, no status byte
    t = track(vlq(5), end=False)
    with pytest.raises(MidiFormatError):
        parse_midi(smf(480, [t]))


def test_high_data_byte_rejected():
    payload = vlq(0) + bytes([0x90, 0x90, 0x40])
    with pytest.raises(MidiFormatError, match="high bit"):
        parse_midi(smf(480, [track(payload)]))


def test_overlong_delta_rejected():
    t = track(b"\x80\x80\x80\x80\x00" + note_on(0, 60, 64), end=False)
    with pytest.raises(MidiFormatError):
        parse_midi(smf(480, [t]))
