"""Shared helpers: word validation and open-addressing capacity rules."""

from __future__ import annotations

from fractions import Fraction

from .errors import TableFullError, ValidationError

# Hard ceiling for incremental inserts, as a fraction of table capacity.
MAX_INSERT_LOAD = Fraction(19, 20)

# Word lengths are serialized as 16-bit prefixes in the long-word arena.
MAX_WORD_LENGTH = 0xFFFF


def capacity_for(count: int, alpha: Fraction) -> int:
    """Slot count for a table holding `count` entries at load factor alpha.

    ceil(count / alpha), but never smaller than count + 1 so that every
    table keeps at least one empty slot and probe scans always terminate.
    """
    if count < 0:
        raise ValidationError("entry count must be non-negative")
    num, den = alpha.numerator, alpha.denominator
    return max(-(-count * den // num), count + 1)


def check_headroom(current: int, added: int, capacity: int, what: str) -> None:
    """Raise TableFullError unless `added` more entries fit under the ceiling."""
    total = current + added
    if total > capacity - 1 or total * MAX_INSERT_LOAD.denominator > MAX_INSERT_LOAD.numerator * capacity:
        raise TableFullError(
            f"{what}: {added} new entries would raise load past "
            f"{float(MAX_INSERT_LOAD):.2f} ({current}/{capacity} used)"
        )


def validate_word(word, index: int | None = None) -> None:
    """Check a single word: non-empty, no NUL bytes, length under 2**16."""
    where = "word" if index is None else f"word #{index}"
    if len(word) == 0:
        raise ValidationError(f"{where} is empty")
    if len(word) > MAX_WORD_LENGTH:
        raise ValidationError(f"{where} is longer than {MAX_WORD_LENGTH} bytes")
    if 0 in word:
        raise ValidationError(f"{where} contains a zero byte (reserved as empty-slot sentinel)")


def validate_words(words) -> list[bytes]:
    """Validate and deduplicate a word list, preserving first-seen order."""
    out = []
    seen = set()
    for i, word in enumerate(words):
        validate_word(word, i)
        w = bytes(word)
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out
