"""Burrows-Wheeler transform over byte strings.

The forward transform sorts all cyclic rotations of the input and returns
the last column together with the row index of the original string (the
primary index), so no sentinel byte is needed. Rotation ranks are computed
by prefix doubling: each round sorts pairs of ranks covering twice the
context length, so the whole transform costs O(n log^2 n) with numpy doing
the sorting. Equal rotations (periodic inputs) are ordered by start
position, which keeps the output deterministic.
"""

import numpy as np


def bwt_forward(data: bytes) -> tuple[bytes, int]:
    """Return (last column of the sorted rotation matrix, primary index)."""
    n = len(data)
    if n == 0:
        return b"", 0
    if n == 1:
        return data, 0
    arr = np.frombuffer(data, dtype=np.uint8)
    _, rank = np.unique(arr, return_inverse=True)
    rank = rank.astype(np.int64)
    k = 1
    while k < n:
        # rank of the rotation = (rank of first k chars, rank of next k)
        key = rank * np.int64(n + 1) + np.roll(rank, -k)
        idx = np.argsort(key, kind="stable")
        sorted_key = key[idx]
        rank = np.empty(n, dtype=np.int64)
        rank[idx[0]] = 0
        rank[idx[1:]] = np.cumsum(np.diff(sorted_key) != 0)
        if int(rank[idx[-1]]) == n - 1:
            break
        k <<= 1
    order = np.lexsort((np.arange(n), rank))
    last = arr[(order - 1) % n]
    primary = int(np.flatnonzero(order == 0)[0])
    return last.tobytes(), primary


def bwt_inverse(last: bytes, primary: int) -> bytes:
    """Invert bwt_forward.

    Raises IndexError if the primary index is outside the column.
    """
    n = len(last)
    if n == 0:
        if primary != 0:
            raise IndexError("primary index out of range for empty input")
        return b""
    if not 0 <= primary < n:
        raise IndexError(f"primary index {primary} out of range for length {n}")
    arr = np.frombuffer(last, dtype=np.uint8)
    # order[f] = position in the last column of the f-th row of the first
    # column; following it from the primary row walks off the original text.
    order = np.argsort(arr, kind="stable").tolist()
    data = last
    out = bytearray(n)
    row = primary
    for i in range(n):
        row = order[row]
        out[i] = data[row]
    return bytes(out)
