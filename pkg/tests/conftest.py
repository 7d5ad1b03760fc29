"""Shared corpus generators for the test suite."""

from __future__ import annotations

import random

import pytest


def random_words(rng: random.Random, count: int, min_len: int = 1, max_len: int = 14,
                 alphabet_size: int = 26, first: int = 97) -> list[bytes]:
    """Random byte-string words over a contiguous alphabet, deduplicated."""
    out = []
    seen = set()
    for _ in range(count):
        length = rng.randint(min_len, max_len)
        w = bytes(rng.randint(first, first + alphabet_size - 1) for _ in range(length))
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def random_pattern(rng: random.Random, words: list[bytes], alphabet_size: int = 26,
                   first: int = 97, max_len: int = 14) -> bytes:
    """A query pattern: usually a word with a few edits, sometimes random."""
    if words and rng.random() < 0.75:
        pat = bytearray(words[rng.randrange(len(words))])
        for _ in range(rng.randint(0, 2)):
            op = rng.choice("sdi")
            if op == "s" and pat:
                pat[rng.randrange(len(pat))] = rng.randint(first, first + alphabet_size - 1)
            elif op == "d" and len(pat) > 1:
                del pat[rng.randrange(len(pat))]
            else:
                pat.insert(rng.randrange(len(pat) + 1),
                           rng.randint(first, first + alphabet_size - 1))
        if pat:
            return bytes(pat)
    length = rng.randint(1, max_len)
    return bytes(rng.randint(first, first + alphabet_size - 1) for _ in range(length))


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xED17)
