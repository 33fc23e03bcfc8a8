"""LZ77-family compressor with a sliding window (LZSS framing).

Token stream: a control byte announces the next eight items, LSB first,
bit 1 meaning a back-reference. A back-reference is three bytes,
[distance: u16 BE][length - 4: u8], distance counted back from the current
position (1..WINDOW) and allowed to overlap it. Literals are single bytes.

Container layout mirrors the block-sort compressor:

    [magic: 8 bytes "LZSSCMP1"] [version: u8] [original length: u64 BE]
    [token stream]

Matches are found with hash chains over 4-byte keys, newest candidate
first, chain length capped so pathological inputs stay linear. Window and
match limits are fixed so sizes are stable across runs and platforms,
which is the whole point: this exists to measure C(x), not to compete
with production codecs.
"""

import struct

from ..exceptions import MalformedStreamError

MAGIC = b"LZSSCMP1"
VERSION = 1
_HEADER = struct.Struct(">8sBQ")

WINDOW = 8192
MIN_MATCH = 4
MAX_MATCH = 259
_CHAIN_CAP = 32


def _match_len(data: bytes, p: int, i: int, limit: int) -> int:
    """Length of the common prefix of data[p:] and data[i:], capped at limit."""
    if data[p : p + limit] == data[i : i + limit]:
        return min(limit, len(data) - i)
    lo, hi = 0, limit
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if data[p : p + mid] == data[i : i + mid]:
            lo = mid
        else:
            hi = mid - 1
    return lo


class LzssCompressor:
    """Deterministic LZSS codec with a fixed 17-byte header."""

    def __init__(self):
        self.invocations = 0

    def compress(self, data: bytes) -> bytes:
        self.invocations += 1
        out = bytearray(_HEADER.pack(MAGIC, VERSION, len(data)))
        n = len(data)
        chains: dict[bytes, list[int]] = {}
        i = 0
        group = bytearray()
        flags = 0
        nitems = 0
        ctrl_pos = -1
        while i < n:
            if nitems == 0:
                out += group
                ctrl_pos = len(out)
                out.append(0)
                group = bytearray()
                flags = 0
            best_len = 0
            best_dist = 0
            if i + MIN_MATCH <= n:
                key = data[i : i + 4]
                chain = chains.get(key)
                if chain:
                    limit = min(MAX_MATCH, n - i)
                    floor = i - WINDOW
                    for p in reversed(chain):
                        if p < floor:
                            break
                        if best_len and data[p + best_len] != data[i + best_len]:
                            continue
                        length = _match_len(data, p, i, limit)
                        if length > best_len:
                            best_len = length
                            best_dist = i - p
                            if length == limit:
                                break
            if best_len >= MIN_MATCH:
                flags |= 1 << nitems
                group += best_dist.to_bytes(2, "big")
                group.append(best_len - MIN_MATCH)
                end = i + best_len
            else:
                group.append(data[i])
                end = i + 1
            for j in range(i, min(end, n - 3)):
                chain = chains.setdefault(data[j : j + 4], [])
                chain.append(j)
                if len(chain) > _CHAIN_CAP:
                    del chain[0]
            i = end
            nitems += 1
            if nitems == 8:
                out[ctrl_pos] = flags
                nitems = 0
        if nitems:
            out[ctrl_pos] = flags
        out += group
        return bytes(out)

    def decompress(self, data: bytes) -> bytes:
        if len(data) < _HEADER.size:
            raise MalformedStreamError("truncated header")
        magic, version, orig_len = _HEADER.unpack_from(data)
        if magic != MAGIC:
            raise MalformedStreamError(f"bad magic {magic!r}")
        if version != VERSION:
            raise MalformedStreamError(f"unsupported version {version}")
        out = bytearray()
        pos = _HEADER.size
        while len(out) < orig_len:
            if pos >= len(data):
                raise MalformedStreamError("truncated token stream")
            flags = data[pos]
            pos += 1
            for bit in range(8):
                if len(out) >= orig_len:
                    break
                if flags >> bit & 1:
                    if pos + 3 > len(data):
                        raise MalformedStreamError("truncated back-reference")
                    dist = int.from_bytes(data[pos : pos + 2], "big")
                    length = data[pos + 2] + MIN_MATCH
                    pos += 3
                    if not 1 <= dist <= len(out):
                        raise MalformedStreamError(f"bad distance {dist}")
                    start = len(out) - dist
                    for t in range(length):
                        out.append(out[start + t])
                else:
                    if pos >= len(data):
                        raise MalformedStreamError("truncated literal")
                    out.append(data[pos])
                    pos += 1
        if pos != len(data):
            raise MalformedStreamError("trailing data after token stream")
        if len(out) != orig_len:
            raise MalformedStreamError(
                f"length mismatch: header says {orig_len}, got {len(out)}"
            )
        return bytes(out)

    def size(self, data: bytes) -> int:
        return len(self.compress(data))
