"""Compressed-size measurement: built-in codecs, external adapter, cache."""

from .blocksort import BlockSortCompressor
from .bwt import bwt_forward, bwt_inverse
from .cache import SizeCache, content_digest
from .entropy import entropy_decode, entropy_encode
from .external import ExternalCompressor
from .lzss import LzssCompressor
from .spec import (
    CODEC_VERSION,
    DEFAULT_BLOCK_SIZE,
    KIND_BLOCKSORT,
    KIND_EXTERNAL,
    KIND_LZ,
    CompressorSpec,
    blocksort_spec,
    lz_spec,
)
from .stages import mtf_decode, mtf_encode, rle_decode, rle_encode

__all__ = [
    "BlockSortCompressor",
    "CODEC_VERSION",
    "CompressorSpec",
    "DEFAULT_BLOCK_SIZE",
    "ExternalCompressor",
    "KIND_BLOCKSORT",
    "KIND_EXTERNAL",
    "KIND_LZ",
    "LzssCompressor",
    "SizeCache",
    "blocksort_spec",
    "bwt_forward",
    "bwt_inverse",
    "compress",
    "compressed_size",
    "content_digest",
    "decompress",
    "entropy_decode",
    "entropy_encode",
    "lz_spec",
    "make_compressor",
    "mtf_decode",
    "mtf_encode",
    "rle_decode",
    "rle_encode",
]


def make_compressor(spec: CompressorSpec):
    if spec.kind == KIND_BLOCKSORT:
        return BlockSortCompressor(block_size=spec.block_size)
    if spec.kind == KIND_LZ:
        return LzssCompressor()
    return ExternalCompressor(spec)


def compress(spec: CompressorSpec, data: bytes) -> bytes:
    if spec.kind == KIND_EXTERNAL:
        raise ValueError("compress is only defined for built-in compressors")
    return make_compressor(spec).compress(data)


def decompress(spec: CompressorSpec, data: bytes) -> bytes:
    if spec.kind == KIND_EXTERNAL:
        raise ValueError("decompress is only defined for built-in compressors")
    return make_compressor(spec).decompress(data)


def compressed_size(
    spec: CompressorSpec,
    data: bytes,
    cache: SizeCache | None = None,
    compressor=None,
) -> int:
    """Byte length of ``data`` compressed under ``spec``, memoized in ``cache``.

    Pass a prebuilt ``compressor`` to reuse one instance across calls (and
    to observe its invocation counter); otherwise one is built on demand.
    """
    if cache is None:
        comp = compressor if compressor is not None else make_compressor(spec)
        return comp.size(data)
    digest = content_digest(data)
    cached = cache.get(digest, spec.cache_key)
    if cached is not None:
        return cached
    comp = compressor if compressor is not None else make_compressor(spec)
    size = comp.size(data)
    cache.put(digest, spec.cache_key, size)
    return size
