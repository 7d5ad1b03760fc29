"""Rank-supporting bit vector and the generic compaction of sparse tables.

The bit vector stores 32-bit data words interleaved with running counts:
one count word, then `delta` data words, repeated.  Count number i holds
the number of ones in the data words before block i, so a rank query reads
one count and popcounts at most delta words.  Total space is
n_bits * (1 + 1/delta) plus rounding, delta = 4 by default.

Compaction turns a linear-probing slot array into (occupancy bits, dense
payload array).  Probe scans replay on the compacted form: the payload of
original slot s sits at dense[rank1(s)] whenever bit s is set, and a run
of ones that wraps past the end continues at dense[0] because probing is
circular.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

_WORD_BITS = 32
_WORD_MASK = 0xFFFFFFFF


class RankBitVector:
    """Static bit vector answering rank1 and run-scan queries."""

    __slots__ = ("n_bits", "delta", "total_ones", "storage", "_n_words", "word_pos")

    def __init__(self, n_bits: int, delta: int, storage: list[int], total_ones: int):
        self.n_bits = n_bits
        self.delta = delta
        self.storage = storage
        self.total_ones = total_ones
        self._n_words = (n_bits + _WORD_BITS - 1) // _WORD_BITS
        # Position of data word w inside the interleaved storage; probe loops
        # read bits as storage[word_pos[i >> 5]] >> (i & 31) & 1.
        self.word_pos = [
            (w // delta) * (delta + 1) + 1 + w % delta for w in range(self._n_words)
        ]

    @classmethod
    def from_bits(cls, bits, delta: int = 4) -> "RankBitVector":
        """Build from an iterable of truthy/falsy bit values."""
        if delta < 1:
            raise ValueError("delta must be >= 1")
        words = []
        cur = 0
        shift = 0
        n_bits = 0
        for b in bits:
            if b:
                cur |= 1 << shift
            shift += 1
            n_bits += 1
            if shift == _WORD_BITS:
                words.append(cur)
                cur = 0
                shift = 0
        if shift:
            words.append(cur)
        storage = []
        ones = 0
        for base in range(0, len(words), delta):
            storage.append(ones)
            for w in words[base : base + delta]:
                storage.append(w)
                ones += w.bit_count()
        return cls(n_bits, delta, storage, ones)

    def get(self, i: int) -> int:
        """Bit at position i (0-based)."""
        return (self.storage[self.word_pos[i >> 5]] >> (i & 31)) & 1

    def rank1(self, i: int) -> int:
        """Number of ones in positions [0, i); i may equal n_bits."""
        if i < 0 or i > self.n_bits:
            raise IndexError(f"rank position {i} out of range [0, {self.n_bits}]")
        if i == self.n_bits:
            return self.total_ones
        w = i >> 5
        rem = i & 31
        delta = self.delta
        block = w // delta
        off = w - block * delta
        idx = block * (delta + 1)
        storage = self.storage
        r = storage[idx]
        for word in storage[idx + 1 : idx + 1 + off]:
            r += word.bit_count()
        if rem:
            r += (storage[idx + 1 + off] & ((1 << rem) - 1)).bit_count()
        return r

    def scan_ones(self, i: int) -> int:
        """Length of the run of ones starting at i, wrapping circularly.

        Returns 0 if bit i is clear; capped at n_bits for an all-ones vector.
        """
        n = self.n_bits
        if i < 0 or i >= n:
            raise IndexError(f"bit position {i} out of range [0, {n})")
        run = 0
        pos = i
        while run < n and self.get(pos):
            run += 1
            pos += 1
            if pos == n:
                pos = 0
        return run

    def to_bytes(self) -> bytes:
        head = struct.pack("<QB", self.n_bits, self.delta)
        return head + struct.pack(f"<{len(self.storage)}I", *self.storage)

    @classmethod
    def from_bytes(cls, buf, offset: int = 0) -> tuple["RankBitVector", int]:
        """Parse from a buffer; returns (vector, offset past the vector)."""
        n_bits, delta = struct.unpack_from("<QB", buf, offset)
        offset += 9
        n_words = (n_bits + _WORD_BITS - 1) // _WORD_BITS
        n_blocks = (n_words + delta - 1) // delta
        total = n_words + n_blocks
        storage = list(struct.unpack_from(f"<{total}I", buf, offset))
        offset += 4 * total
        ones = 0
        for base in range(0, total, delta + 1):
            for w in storage[base + 1 : base + 1 + delta]:
                ones += w.bit_count()
        return cls(n_bits, delta, storage, ones), offset

    def serialized_bits(self) -> int:
        """Size of to_bytes() in bits, for space accounting."""
        return 8 * (9 + 4 * len(self.storage))


def build_rank(bits, delta: int = 4) -> RankBitVector:
    """Index a bit array for rank queries."""
    return RankBitVector.from_bits(bits, delta)


@dataclass
class CompactedTable:
    """Occupancy bits plus the non-empty slot payloads in slot order."""

    occupancy: RankBitVector
    dense: list

    def payload(self, slot: int):
        """Payload of an original slot; the slot's bit must be set."""
        return self.dense[self.occupancy.rank1(slot)]


def compact_table(slots, is_empty, delta: int = 4) -> CompactedTable:
    """Compact a finished linear-probing array, discarding empty slots."""
    dense = [s for s in slots if not is_empty(s)]
    occupancy = RankBitVector.from_bits((0 if is_empty(s) else 1 for s in slots), delta)
    return CompactedTable(occupancy, dense)
