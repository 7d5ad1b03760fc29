"""Exact-membership dictionary over byte-string words.

Words shorter than the threshold beta live inline in one linear-probing
table per length (slot width = word length, first byte 0 marks an empty
slot, which is why words must not contain NUL bytes).  Words of length
beta or more live in a single table of 32-bit offsets into an arena of
length-prefixed word bytes; the all-ones offset marks an empty slot.

Probing starts at poly_hash(word) mod capacity and scans circularly until
the word or an empty slot is found.  Every table keeps at least one empty
slot, so scans terminate.  Compaction replaces each slot array with an
occupancy bit vector plus a dense payload and freezes the structure.
"""

from __future__ import annotations

import struct
from fractions import Fraction

from .errors import CompactedError, ValidationError
from .hashing import poly_hash
from .succinct import RankBitVector
from .util import capacity_for, check_headroom, validate_word, validate_words

EMPTY_OFFSET = 0xFFFFFFFF

# Capacity of a per-length table created on demand by insert_word for a
# length unseen at build time.  Tables are never grown.
NEW_TABLE_CAPACITY = 16


class _ShortTable:
    """Inline table for words of one fixed length below beta."""

    __slots__ = ("width", "capacity", "count", "slots", "occupancy", "dense")

    def __init__(self, width: int, capacity: int):
        self.width = width
        self.capacity = capacity
        self.count = 0
        self.slots = bytearray(width * capacity)
        self.occupancy: RankBitVector | None = None
        self.dense: bytes | None = None

    def contains(self, word, h: int) -> bool:
        t = self.capacity
        w = self.width
        s = h % t
        first = word[0]
        if self.slots is not None:
            slots = self.slots
            while True:
                off = s * w
                b = slots[off]
                if b == first and slots[off : off + w] == word:
                    return True
                if b == 0:
                    return False
                s += 1
                if s == t:
                    s = 0
        occ = self.occupancy
        storage = occ.storage
        word_pos = occ.word_pos
        if not (storage[word_pos[s >> 5]] >> (s & 31)) & 1:
            return False
        dense = self.dense
        j = occ.rank1(s)
        while True:
            off = j * w
            if dense[off] == first and dense[off : off + w] == word:
                return True
            s += 1
            j += 1
            if s == t:
                s = 0
                j = 0
            if not (storage[word_pos[s >> 5]] >> (s & 31)) & 1:
                return False

    def insert(self, word, h: int) -> bool:
        """Insert unless present; returns True if the word was new."""
        t = self.capacity
        w = self.width
        s = h % t
        first = word[0]
        slots = self.slots
        while True:
            off = s * w
            b = slots[off]
            if b == 0:
                slots[off : off + w] = word
                self.count += 1
                return True
            if b == first and slots[off : off + w] == word:
                return False
            s += 1
            if s == t:
                s = 0

    def compact(self, delta: int) -> None:
        w = self.width
        slots = self.slots
        dense = bytearray()
        flags = bytearray(self.capacity)
        for s in range(self.capacity):
            off = s * w
            if slots[off] != 0:
                flags[s] = 1
                dense += slots[off : off + w]
        self.occupancy = RankBitVector.from_bits(flags, delta)
        self.dense = bytes(dense)
        self.slots = None

    def to_bytes(self) -> bytes:
        head = struct.pack("<BQQ", self.width, self.capacity, self.count)
        if self.slots is not None:
            return head + bytes(self.slots)
        return head + self.occupancy.to_bytes() + self.dense

    @classmethod
    def from_bytes(cls, buf, offset: int, compacted: bool, delta: int):
        width, capacity, count = struct.unpack_from("<BQQ", buf, offset)
        offset += 17
        table = cls.__new__(cls)
        table.width = width
        table.capacity = capacity
        table.count = count
        if compacted:
            table.slots = None
            table.occupancy, offset = RankBitVector.from_bytes(buf, offset)
            end = offset + count * width
            table.dense = bytes(buf[offset:end])
            offset = end
        else:
            end = offset + capacity * width
            table.slots = bytearray(buf[offset:end])
            table.occupancy = None
            table.dense = None
            offset = end
        return table, offset


class _LongTable:
    """Offset table plus arena for words of length >= beta."""

    __slots__ = ("capacity", "count", "offsets", "arena", "occupancy", "dense")

    def __init__(self, capacity: int):
        self.capacity = capacity
        self.count = 0
        self.offsets: list[int] | None = [EMPTY_OFFSET] * capacity
        self.arena = bytearray()
        self.occupancy: RankBitVector | None = None
        self.dense: list[int] | None = None

    def _matches(self, o: int, word) -> bool:
        arena = self.arena
        ln = arena[o] | (arena[o + 1] << 8)
        return ln == len(word) and arena[o + 2 : o + 2 + ln] == word

    def contains(self, word, h: int) -> bool:
        t = self.capacity
        s = h % t
        m = len(word)
        arena = self.arena
        if self.offsets is not None:
            offsets = self.offsets
            while True:
                o = offsets[s]
                if o == EMPTY_OFFSET:
                    return False
                if (arena[o] | (arena[o + 1] << 8)) == m and arena[o + 2 : o + 2 + m] == word:
                    return True
                s += 1
                if s == t:
                    s = 0
        occ = self.occupancy
        storage = occ.storage
        word_pos = occ.word_pos
        if not (storage[word_pos[s >> 5]] >> (s & 31)) & 1:
            return False
        j = occ.rank1(s)
        dense = self.dense
        while True:
            o = dense[j]
            if (arena[o] | (arena[o + 1] << 8)) == m and arena[o + 2 : o + 2 + m] == word:
                return True
            s += 1
            j += 1
            if s == t:
                s = 0
                j = 0
            if not (storage[word_pos[s >> 5]] >> (s & 31)) & 1:
                return False

    def insert(self, word, h: int) -> bool:
        t = self.capacity
        s = h % t
        offsets = self.offsets
        while True:
            o = offsets[s]
            if o == EMPTY_OFFSET:
                break
            if self._matches(o, word):
                return False
            s += 1
            if s == t:
                s = 0
        o = len(self.arena)
        if o + 2 + len(word) >= EMPTY_OFFSET:
            raise ValidationError("long-word arena exceeds 32-bit offsets")
        self.arena += struct.pack("<H", len(word))
        self.arena += word
        offsets[s] = o
        self.count += 1
        return True

    def compact(self, delta: int) -> None:
        offsets = self.offsets
        self.dense = [o for o in offsets if o != EMPTY_OFFSET]
        self.occupancy = RankBitVector.from_bits(
            (0 if o == EMPTY_OFFSET else 1 for o in offsets), delta
        )
        self.offsets = None

    def to_bytes(self) -> bytes:
        head = struct.pack("<QQ", self.capacity, self.count)
        if self.offsets is not None:
            body = struct.pack(f"<{self.capacity}I", *self.offsets)
        else:
            body = self.occupancy.to_bytes() + struct.pack(f"<{self.count}I", *self.dense)
        return head + body + struct.pack("<Q", len(self.arena)) + bytes(self.arena)

    @classmethod
    def from_bytes(cls, buf, offset: int, compacted: bool, delta: int):
        capacity, count = struct.unpack_from("<QQ", buf, offset)
        offset += 16
        table = cls.__new__(cls)
        table.capacity = capacity
        table.count = count
        if compacted:
            table.offsets = None
            table.occupancy, offset = RankBitVector.from_bytes(buf, offset)
            table.dense = list(struct.unpack_from(f"<{count}I", buf, offset))
            offset += 4 * count
        else:
            table.offsets = list(struct.unpack_from(f"<{capacity}I", buf, offset))
            table.occupancy = None
            table.dense = None
            offset += 4 * capacity
        (arena_len,) = struct.unpack_from("<Q", buf, offset)
        offset += 8
        table.arena = bytearray(buf[offset : offset + arena_len])
        offset += arena_len
        return table, offset


class ExactDictionary:
    """Membership structure over the unmodified dictionary words."""

    __slots__ = (
        "alpha",
        "beta",
        "seed",
        "word_count",
        "total_length",
        "short_tables",
        "long_table",
        "compacted",
    )

    def __init__(self, alpha: Fraction, beta: int, seed: int):
        self.alpha = alpha
        self.beta = beta
        self.seed = seed
        self.word_count = 0
        self.total_length = 0
        self.short_tables: dict[int, _ShortTable] = {}
        self.long_table = _LongTable(capacity_for(0, alpha))
        self.compacted = False

    def contains(self, word, h: int | None = None) -> bool:
        """True iff the word was stored.  h may carry a precomputed hash."""
        m = len(word)
        if m == 0:
            return False
        if h is None:
            h = poly_hash(word, self.seed)
        if m < self.beta:
            table = self.short_tables.get(m)
            return table.contains(word, h) if table is not None else False
        return self.long_table.contains(word, h)

    def probe_for_length(self, length: int):
        """Bound membership probe for candidates of one length, or None.

        None means no stored word can have this length, so a caller
        enumerating candidates of that length may skip them wholesale.
        """
        if length <= 0:
            return None
        if length < self.beta:
            table = self.short_tables.get(length)
            if table is None or table.count == 0:
                return None
            return table.contains
        if self.long_table.count == 0:
            return None
        return self.long_table.contains

    def check_headroom(self, length: int) -> None:
        """Raise TableFullError if one more word of this length will not fit."""
        if length < self.beta:
            table = self.short_tables.get(length)
            if table is None:
                return
            check_headroom(table.count, 1, table.capacity, f"word table (length {length})")
        else:
            check_headroom(self.long_table.count, 1, self.long_table.capacity, "long-word table")

    def insert_word(self, word, h: int | None = None) -> bool:
        """Add one word; returns False if it was already present.

        Only available before compaction.  A length unseen at build time
        gets a small fresh table; tables are never grown, so sustained
        inserts into one length eventually raise TableFullError.
        """
        if self.compacted:
            raise CompactedError("cannot insert into a compacted dictionary")
        validate_word(word)
        m = len(word)
        if h is None:
            h = poly_hash(word, self.seed)
        if m < self.beta:
            table = self.short_tables.get(m)
            if table is None:
                table = _ShortTable(m, NEW_TABLE_CAPACITY)
                self.short_tables[m] = table
        else:
            table = self.long_table
        check_headroom(
            table.count, 1, table.capacity,
            f"word table (length {m})" if m < self.beta else "long-word table",
        )
        if not table.insert(bytes(word), h):
            return False
        self.word_count += 1
        self.total_length += m
        return True

    def compact(self, delta: int = 4) -> None:
        """Replace every slot array with occupancy bits plus dense payload."""
        if self.compacted:
            return
        for table in self.short_tables.values():
            table.compact(delta)
        self.long_table.compact(delta)
        self.compacted = True

    def table_report(self) -> list[tuple[str, int, int]]:
        """(name, entries, capacity) per table, for occupancy statistics."""
        rows = [
            (f"words[len={w}]", t.count, t.capacity)
            for w, t in sorted(self.short_tables.items())
        ]
        rows.append(("words[long]", self.long_table.count, self.long_table.capacity))
        return rows

    def to_bytes(self) -> bytes:
        parts = [
            struct.pack(
                "<QQB", self.word_count, self.total_length, len(self.short_tables)
            )
        ]
        for width in sorted(self.short_tables):
            parts.append(self.short_tables[width].to_bytes())
        parts.append(self.long_table.to_bytes())
        return b"".join(parts)

    @classmethod
    def from_bytes(cls, buf, offset: int, alpha: Fraction, beta: int, seed: int,
                   compacted: bool, delta: int):
        d = cls(alpha, beta, seed)
        d.word_count, d.total_length, n_short = struct.unpack_from("<QQB", buf, offset)
        offset += 17
        for _ in range(n_short):
            table, offset = _ShortTable.from_bytes(buf, offset, compacted, delta)
            d.short_tables[table.width] = table
        d.long_table, offset = _LongTable.from_bytes(buf, offset, compacted, delta)
        d.compacted = compacted
        return d, offset


def build_exact(words, alpha: Fraction, beta: int = 16, seed: int = 1,
                validated: bool = False) -> ExactDictionary:
    """Build the membership structure for a word list.

    Duplicates are dropped; words containing NUL bytes are rejected with a
    diagnostic naming the offending input position.
    """
    if not validated:
        words = validate_words(words)
    d = ExactDictionary(alpha, beta, seed)
    counts: dict[int, int] = {}
    n_long = 0
    for w in words:
        if len(w) < beta:
            counts[len(w)] = counts.get(len(w), 0) + 1
        else:
            n_long += 1
    for width, count in counts.items():
        d.short_tables[width] = _ShortTable(width, capacity_for(count, alpha))
    d.long_table = _LongTable(capacity_for(n_long, alpha))
    for w in words:
        m = len(w)
        h = poly_hash(w, seed)
        table = d.short_tables[m] if m < beta else d.long_table
        table.insert(w, h)
    d.word_count = len(words)
    d.total_length = sum(len(w) for w in words)
    return d


def compact_exact(d: ExactDictionary, delta: int = 4) -> ExactDictionary:
    """Compact in place and return the same dictionary."""
    d.compact(delta)
    return d
