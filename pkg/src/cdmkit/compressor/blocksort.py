"""Block-sorting compressor.

The input is cut into fixed-size blocks and each block runs through the
pipeline

    Burrows-Wheeler transform -> move-to-front -> zero-run RLE -> entropy

Container layout:

    [magic: 8 bytes "BLKSORT1"] [version: u8] [original length: u64 BE]
    per block: [payload length: u32 BE] [primary index: u32 BE] [payload]

The 17-byte header is the compressor's fixed cost: compressing the empty
string yields exactly the header.
"""

import struct

from ..exceptions import MalformedStreamError
from .bwt import bwt_forward, bwt_inverse
from .entropy import entropy_decode, entropy_encode
from .stages import mtf_decode, mtf_encode, rle_decode, rle_encode

MAGIC = b"BLKSORT1"
VERSION = 1
_HEADER = struct.Struct(">8sBQ")
_BLOCK = struct.Struct(">II")


class BlockSortCompressor:
    """Lossless block-sorting compressor with a fixed 17-byte header."""

    def __init__(self, block_size: int = 900000):
        if block_size < 1024:
            raise ValueError(f"block_size must be >= 1024, got {block_size}")
        self.block_size = block_size
        self.invocations = 0

    def compress(self, data: bytes) -> bytes:
        self.invocations += 1
        out = bytearray(_HEADER.pack(MAGIC, VERSION, len(data)))
        for start in range(0, len(data), self.block_size):
            block = data[start : start + self.block_size]
            last, primary = bwt_forward(block)
            payload = entropy_encode(rle_encode(mtf_encode(last)))
            out += _BLOCK.pack(len(payload), primary)
            out += payload
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
        while pos < len(data):
            if len(data) - pos < _BLOCK.size:
                raise MalformedStreamError("truncated block frame")
            payload_len, primary = _BLOCK.unpack_from(data, pos)
            pos += _BLOCK.size
            if len(data) - pos < payload_len:
                raise MalformedStreamError("truncated block payload")
            payload = data[pos : pos + payload_len]
            pos += payload_len
            last = mtf_decode(rle_decode(entropy_decode(payload)))
            if not last and primary != 0:
                raise MalformedStreamError("primary index on empty block")
            if last and not 0 <= primary < len(last):
                raise MalformedStreamError("primary index out of range")
            out += bwt_inverse(last, primary)
        if len(out) != orig_len:
            raise MalformedStreamError(
                f"length mismatch: header says {orig_len}, got {len(out)}"
            )
        return bytes(out)

    def size(self, data: bytes) -> int:
        return len(self.compress(data))
