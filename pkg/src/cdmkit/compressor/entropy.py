"""Static arithmetic coder, the entropy stage of the block-sort pipeline.

Stream layout:

    [distinct: u16 BE]
    distinct * ([symbol: u8] [count: varint])
    [arithmetic-coded payload bits, zero-padded to a byte boundary]

The model is the exact symbol histogram of the input, so the payload costs
essentially the order-0 entropy: never more than the input length plus the
table. A run of one repeated symbol costs only the table (probability one
symbols consume no bits), which is what makes the empty and highly
repetitive cases so small.

Classic 32-bit integer coder with underflow (E3) handling; total symbol
count must stay below 2^30 to preserve precision, which the block-sorted
caller guarantees via its block size.
"""

from bisect import bisect_right

import numpy as np

from ..exceptions import MalformedStreamError
from .stages import read_varint, write_varint

_TOP = (1 << 32) - 1
_HALF = 1 << 31
_QUARTER = 1 << 30
_THREEQ = _HALF + _QUARTER
_MAX_TOTAL = 1 << 30


def entropy_encode(data: bytes) -> bytes:
    if len(data) >= _MAX_TOTAL:
        raise ValueError("input too long for 32-bit coder precision")
    arr = np.frombuffer(data, dtype=np.uint8)
    counts = np.bincount(arr, minlength=256)
    symbols = np.flatnonzero(counts)
    out = bytearray(len(symbols).to_bytes(2, "big"))
    for s in symbols.tolist():
        out.append(s)
        out += write_varint(int(counts[s]))
    if not data:
        return bytes(out)

    cum = np.zeros(257, dtype=np.int64)
    np.cumsum(counts, out=cum[1:])
    total = len(data)
    lows = cum[arr].tolist()
    highs = cum[arr.astype(np.int64) + 1].tolist()

    low, high, pending = 0, _TOP, 0
    bits = bytearray()
    emit = bits.append
    for cum_lo, cum_hi in zip(lows, highs):
        span = high - low + 1
        high = low + span * cum_hi // total - 1
        low = low + span * cum_lo // total
        while True:
            if high < _HALF:
                emit(0)
                if pending:
                    bits += b"\x01" * pending
                    pending = 0
            elif low >= _HALF:
                emit(1)
                if pending:
                    bits += b"\x00" * pending
                    pending = 0
                low -= _HALF
                high -= _HALF
            elif low >= _QUARTER and high < _THREEQ:
                pending += 1
                low -= _QUARTER
                high -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
    # disambiguate the final interval
    pending += 1
    if low >= _QUARTER:
        emit(1)
        bits += b"\x00" * pending
    else:
        emit(0)
        bits += b"\x01" * pending
    bits += b"\x00" * ((-len(bits)) % 8)
    packed = np.packbits(np.frombuffer(bytes(bits), dtype=np.uint8))
    return bytes(out) + packed.tobytes()


def entropy_decode(data: bytes) -> bytes:
    if len(data) < 2:
        raise MalformedStreamError("missing symbol table")
    distinct = int.from_bytes(data[:2], "big")
    if distinct > 256:
        raise MalformedStreamError("symbol table too large")
    pos = 2
    symbols: list[int] = []
    counts: list[int] = []
    for _ in range(distinct):
        if pos >= len(data):
            raise MalformedStreamError("truncated symbol table")
        symbols.append(data[pos])
        pos += 1
        c, pos = read_varint(data, pos)
        if c <= 0:
            raise MalformedStreamError("non-positive symbol count")
        counts.append(c)
    if any(a >= b for a, b in zip(symbols, symbols[1:])):
        raise MalformedStreamError("symbol table not sorted")
    total = sum(counts)
    if total == 0:
        return b""
    if total >= _MAX_TOTAL:
        raise MalformedStreamError("symbol total exceeds coder precision")
    cum = [0]
    for c in counts:
        cum.append(cum[-1] + c)

    payload = np.frombuffer(data, dtype=np.uint8, offset=pos)
    bit_list = np.unpackbits(payload).tolist()
    n_bits = len(bit_list)
    # a valid stream may be read at most ~32 bits past its end
    bit_list += [0] * 64
    bp = 0
    code = 0
    for _ in range(32):
        code = (code << 1) | bit_list[bp]
        bp += 1
    low, high = 0, _TOP
    out = bytearray(total)
    for i in range(total):
        span = high - low + 1
        value = ((code - low + 1) * total - 1) // span
        k = bisect_right(cum, value) - 1
        out[i] = symbols[k]
        high = low + span * cum[k + 1] // total - 1
        low = low + span * cum[k] // total
        while True:
            if high < _HALF:
                pass
            elif low >= _HALF:
                low -= _HALF
                high -= _HALF
                code -= _HALF
            elif low >= _QUARTER and high < _THREEQ:
                low -= _QUARTER
                high -= _QUARTER
                code -= _QUARTER
            else:
                break
            low <<= 1
            high = (high << 1) | 1
            code = (code << 1) | bit_list[bp]
            bp += 1
        if bp > n_bits + 32:
            raise MalformedStreamError("payload exhausted before all symbols")
    return bytes(out)
