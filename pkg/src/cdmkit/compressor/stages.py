"""Move-to-front and zero-run-length stages of the block-sort pipeline."""

import numpy as np

from ..exceptions import MalformedStreamError


def write_varint(n: int) -> bytes:
    """LEB128: 7 bits per byte, high bit marks continuation."""
    out = bytearray()
    while True:
        b = n & 0x7F
        n >>= 7
        if n:
            out.append(b | 0x80)
        else:
            out.append(b)
            return bytes(out)


def read_varint(data: bytes, pos: int) -> tuple[int, int]:
    """Decode a varint at ``pos``; returns (value, new position)."""
    n = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise MalformedStreamError("truncated varint")
        b = data[pos]
        pos += 1
        n |= (b & 0x7F) << shift
        if not b & 0x80:
            return n, pos
        shift += 7
        if shift > 63:
            raise MalformedStreamError("varint too long")


def mtf_encode(data: bytes) -> bytes:
    """Move-to-front over the 256-symbol alphabet, initialized 0..255.

    Runs of equal bytes map to a single table lookup plus zeros, so the
    cost is proportional to the number of runs rather than the length.
    """
    arr = np.frombuffer(data, dtype=np.uint8)
    if arr.size == 0:
        return b""
    starts = np.concatenate(([0], np.flatnonzero(arr[1:] != arr[:-1]) + 1))
    table = list(range(256))
    indices = []
    for c in arr[starts].tolist():
        i = table.index(c)
        indices.append(i)
        if i:
            del table[i]
            table.insert(0, c)
    out = np.zeros(arr.size, dtype=np.uint8)
    out[starts] = indices
    return out.tobytes()


def mtf_decode(data: bytes) -> bytes:
    table = list(range(256))
    out = bytearray(len(data))
    for pos, i in enumerate(data):
        c = table[i]
        out[pos] = c
        if i:
            del table[i]
            table.insert(0, c)
    return bytes(out)


def rle_encode(data: bytes) -> bytes:
    """Replace each maximal run of zero bytes with 0x00 + varint(length).

    Non-zero bytes pass through verbatim, so decoding is driven entirely
    by the 0x00 marker.
    """
    arr = np.frombuffer(data, dtype=np.uint8)
    if arr.size == 0:
        return b""
    zero = arr == 0
    bounds = np.concatenate(
        ([0], np.flatnonzero(zero[1:] != zero[:-1]) + 1, [arr.size])
    )
    out = bytearray()
    for s, e in zip(bounds[:-1].tolist(), bounds[1:].tolist()):
        if zero[s]:
            out.append(0)
            out += write_varint(e - s)
        else:
            out += data[s:e]
    return bytes(out)


def rle_decode(data: bytes) -> bytes:
    out = bytearray()
    pos = 0
    n = len(data)
    while pos < n:
        b = data[pos]
        pos += 1
        if b == 0:
            run, pos = read_varint(data, pos)
            out += b"\x00" * run
        else:
            out.append(b)
    return bytes(out)
