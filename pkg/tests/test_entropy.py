"""Static arithmetic coder round trips, size bounds, malformed streams."""

import random
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cdmkit.compressor.entropy import entropy_decode, entropy_encode
from cdmkit.exceptions import MalformedStreamError


def test_all_zero_golden():
    # table (2 + 1 symbol + 2-byte varint count) + one disambiguation byte
    encoded = entropy_encode(bytes(10000))
    assert len(encoded) == 6
    assert entropy_decode(encoded) == bytes(10000)


def test_empty_input():
    encoded = entropy_encode(b"")
    assert encoded == b"\x00\x00"
    assert entropy_decode(encoded) == b""


def test_single_byte():
    encoded = entropy_encode(b"Q")
    assert entropy_decode(encoded) == b"Q"


def test_round_trip_ascii():
    data = b"the quick brown fox jumps over the lazy dog" * 3
    assert entropy_decode(entropy_encode(data)) == data


def test_round_trip_all_byte_values():
    data = bytes(range(256)) * 2
    assert entropy_decode(entropy_encode(data)) == data


def test_round_trip_seeded_random():
    rng = random.Random(13)
    for _ in range(120):
        data = rng.randbytes(rng.randrange(0, 2000))
        assert entropy_decode(entropy_encode(data)) == data


def test_round_trip_skewed():
    rng = random.Random(17)
    for _ in range(60):
        data = bytes(
            0 if rng.random() < 0.9 else rng.randrange(256)
            for _ in range(rng.randrange(1, 3000))
        )
        assert entropy_decode(entropy_encode(data)) == data


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=600))
def test_round_trip_property(data):
    assert entropy_decode(entropy_encode(data)) == data


def test_size_never_far_above_input():
    # worst case is near-uniform data: payload ~ input, table <= 256 * 6 + 2
    rng = random.Random(23)
    for n in (0, 1, 100, 5000):
        data = rng.randbytes(n)
        assert len(entropy_encode(data)) <= n + 1600


def test_repeated_symbol_costs_only_table():
    for n in (1, 10, 100000):
        assert len(entropy_encode(b"\x7f" * n)) <= 8


def test_compresses_skewed_data():
    data = b"\x00" * 9000 + b"\x01" * 1000
    # order-0 entropy is 0.469 bits/byte, so ~590 bytes plus the table
    assert len(entropy_encode(data)) < 700


def test_deterministic():
    data = random.Random(3).randbytes(5000)
    assert entropy_encode(data) == entropy_encode(data)


def test_input_too_long_guard():
    class FakeLen(bytes):
        def __len__(self):
            return 1 << 30

    with pytest.raises(ValueError):
        entropy_encode(FakeLen())


def test_decode_missing_table():
    with pytest.raises(MalformedStreamError):
        entropy_decode(b"")
    with pytest.raises(MalformedStreamError):
        entropy_decode(b"\x00")


def test_decode_table_too_large():
    with pytest.raises(MalformedStreamError):
        entropy_decode((257).to_bytes(2, "big"))


def test_decode_truncated_table():
    # claims two entries, provides one
    bad = (2).to_bytes(2, "big") + b"\x41\x05"
    with pytest.raises(MalformedStreamError):
        entropy_decode(bad)


def test_decode_zero_count():
    bad = (1).to_bytes(2, "big") + b"\x41\x00"
    with pytest.raises(MalformedStreamError):
        entropy_decode(bad)


def test_decode_unsorted_table():
    bad = (2).to_bytes(2, "big") + b"\x42\x01\x41\x01"
    with pytest.raises(MalformedStreamError):
        entropy_decode(bad)


def test_decode_duplicate_symbol():
    bad = (2).to_bytes(2, "big") + b"\x41\x01\x41\x01"
    with pytest.raises(MalformedStreamError):
        entropy_decode(bad)


def test_decode_total_overflows_precision():
    bad = (1).to_bytes(2, "big") + b"\x41" + _varint(1 << 30)
    with pytest.raises(MalformedStreamError):
        entropy_decode(bad)


def test_decode_truncated_payload():
    data = random.Random(29).randbytes(4000)
    encoded = entropy_encode(data)
    # drop most of the payload; the coder must notice it ran dry
    with pytest.raises(MalformedStreamError):
        entropy_decode(encoded[: len(encoded) // 2])


def test_decode_preserves_histogram():
    data = b"mississippi river basin" * 40
    decoded = entropy_decode(entropy_encode(data))
    assert Counter(decoded) == Counter(data)
    assert decoded == data


def _varint(n: int) -> bytes:
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)
