"""Vectorized reference distances for large differential tests.

Independent of the package's query path: a plain dynamic program over
numpy arrays, one row of words at a time.  test_baseline anchors it
against the naive levenshtein implementation; the heavy acceptance runs
then use it to keep full-set comparisons affordable.
"""

from __future__ import annotations

import numpy as np


def batch_distances(pattern: bytes, words: np.ndarray) -> np.ndarray:
    """Edit distances from `pattern` to every row of a (count, length) array.

    The horizontal (insertion) dependency is resolved with a prefix-min:
    cur[j] = min over j' <= j of c[j'] + (j - j'), computed by running
    minimum.accumulate on c[j] - j.
    """
    count, length = words.shape
    idx = np.arange(length + 1, dtype=np.int32)
    prev = np.broadcast_to(idx, (count, length + 1)).copy()
    c = np.empty((count, length + 1), dtype=np.int32)
    for i in range(1, len(pattern) + 1):
        c[:, 0] = i
        np.minimum(
            prev[:, 1:] + 1,
            prev[:, :-1] + (words != pattern[i - 1]),
            out=c[:, 1:],
        )
        t = c - idx
        np.minimum.accumulate(t, axis=1, out=t)
        prev = t + idx
    return prev[:, length]


class FastOracle:
    """Per-dictionary reference: all words within distance k of a pattern."""

    def __init__(self, words):
        self.groups = {}
        by_len = {}
        for w in words:
            by_len.setdefault(len(w), []).append(bytes(w))
        for length, ws in by_len.items():
            arr = np.frombuffer(b"".join(ws), dtype=np.uint8).reshape(len(ws), length)
            self.groups[length] = (arr, ws)

    def query(self, pattern: bytes, k: int) -> set[bytes]:
        m = len(pattern)
        out = set()
        for length in range(max(1, m - k), m + k + 1):
            group = self.groups.get(length)
            if group is None:
                continue
            arr, ws = group
            dist = batch_distances(pattern, arr)
            for i in np.nonzero(dist <= k)[0]:
                out.add(ws[i])
        return out

    def query_all_k(self, pattern: bytes, ks=(0, 1, 2)) -> dict[int, set[bytes]]:
        """Result sets for several bounds in one distance pass."""
        kmax = max(ks)
        m = len(pattern)
        out = {k: set() for k in ks}
        for length in range(max(1, m - kmax), m + kmax + 1):
            group = self.groups.get(length)
            if group is None:
                continue
            arr, ws = group
            dist = batch_distances(pattern, arr)
            for k in ks:
                for i in np.nonzero(dist <= k)[0]:
                    out[k].add(ws[i])
        return out
