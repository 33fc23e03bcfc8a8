"""Persistent cache of compressed sizes keyed by content digest."""

import csv
import hashlib
import os
import threading


def content_digest(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class SizeCache:
    """Maps (content digest, compressor cache key) to a compressed size.

    Backed by an append-only CSV file with rows ``digest,compressor_id,size``;
    pass ``path=None`` for a purely in-memory cache. Reads are lock-free on
    the in-memory dict; writes are serialized and appended immediately, so
    concurrent workers sharing one cache object never lose entries.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = os.fspath(path) if path is not None else None
        self._entries: dict[tuple[str, str], int] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0
        if self.path is not None and os.path.exists(self.path):
            self._load()

    def _load(self):
        with open(self.path, newline="") as fh:
            for lineno, row in enumerate(csv.reader(fh), 1):
                if not row:
                    continue
                if len(row) != 3:
                    raise ValueError(f"{self.path}:{lineno}: expected 3 fields")
                digest, key, size = row
                self._entries[(digest, key)] = int(size)

    def get(self, digest: str, key: str) -> int | None:
        size = self._entries.get((digest, key))
        if size is None:
            self.misses += 1
        else:
            self.hits += 1
        return size

    def put(self, digest: str, key: str, size: int):
        if size < 0:
            raise ValueError(f"size must be >= 0, got {size}")
        with self._lock:
            if self._entries.get((digest, key)) == size:
                return
            self._entries[(digest, key)] = size
            if self.path is not None:
                with open(self.path, "a", newline="") as fh:
                    csv.writer(fh).writerow([digest, key, size])

    def __len__(self) -> int:
        return len(self._entries)

    def __contains__(self, pair: tuple[str, str]) -> bool:
        return pair in self._entries
