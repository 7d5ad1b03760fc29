"""Polynomial string hashing with constant-time single-edit updates.

A word w = w_1..w_m over byte values [1, 255] hashes to

    h(w) = sum(w_i * r**i for i in 1..m) mod MODULUS

where MODULUS = 2**32 - 5 is the largest prime below 2**32 and r is a
random seed in [1, MODULUS - 2].  Preprocessing a word once into a
HashContext (prefix hashes, powers of r, the inverse of r) makes the hash
of any string at edit distance one from it an O(1) computation, which is
what both table placement and signature filtering lean on.

Wildcard slots in store keys contribute the fixed value 257, outside the
byte domain, so a keyed pattern can never collide with a real string by
construction.
"""

from __future__ import annotations

from dataclasses import dataclass

MODULUS = 2**32 - 5
WILDCARD = 257

SIGNATURE_BITS = 4
_SIGNATURE_MASK = (1 << SIGNATURE_BITS) - 1

_POWER_CACHE: dict[int, list[int]] = {}
_INVERSE_CACHE: dict[int, int] = {}


def random_seed(rng) -> int:
    """Draw a polynomial base uniformly from [1, MODULUS - 2]."""
    return rng.randrange(1, MODULUS - 1)


def powers_of(seed: int, count: int) -> list[int]:
    """Powers seed**j mod MODULUS for j in [0, count], cached per seed.

    The returned list may be longer than requested; it is shared and must
    not be mutated by callers.
    """
    powers = _POWER_CACHE.get(seed)
    if powers is None or len(powers) <= count:
        n = max(count + 1, 80)
        powers = [1] * n
        p = 1
        for j in range(1, n):
            p = p * seed % MODULUS
            powers[j] = p
        _POWER_CACHE[seed] = powers
    return powers


def inverse_of(seed: int) -> int:
    """Modular inverse of the seed (MODULUS is prime, so it always exists)."""
    inv = _INVERSE_CACHE.get(seed)
    if inv is None:
        inv = pow(seed, MODULUS - 2, MODULUS)
        _INVERSE_CACHE[seed] = inv
    return inv


def poly_hash(word, seed: int) -> int:
    """Hash of a word, evaluated by Horner's rule.

    `word` is any sequence of integer symbols: bytes for real strings,
    tuples mixing bytes and WILDCARD for store keys.
    """
    h = 0
    for c in reversed(word):
        h = (h + c) * seed % MODULUS
    return h


def signature_of(sig_hash: int) -> int:
    """The 4-bit signature: low bits of the key's hash under the signature seed."""
    return sig_hash & _SIGNATURE_MASK


class HashContext:
    """Preprocessed per-word state for O(1) hashes of single-edit variants.

    prefix[j] = sum(w_i * r**i for i <= j) mod MODULUS, so prefix[0] == 0
    and prefix[m] == poly_hash(word).  Positions are 1-based throughout;
    insertion gaps run from 0 (front) to m (back).
    """

    __slots__ = ("word", "seed", "prefix", "powers", "inv", "total")

    def __init__(self, word, seed: int):
        m = len(word)
        powers = powers_of(seed, m + 2)
        prefix = [0] * (m + 1)
        h = 0
        for j in range(1, m + 1):
            h = (h + word[j - 1] * powers[j]) % MODULUS
            prefix[j] = h
        self.word = word
        self.seed = seed
        self.prefix = prefix
        self.powers = powers
        self.inv = inverse_of(seed)
        self.total = h

    def substitute(self, pos: int, char: int) -> int:
        """Hash of the word with the character at `pos` replaced by `char`."""
        return (self.total + (char - self.word[pos - 1]) * self.powers[pos]) % MODULUS

    def delete(self, pos: int) -> int:
        """Hash of the word with the character at `pos` removed."""
        p = self.prefix
        return (p[pos - 1] + (self.total - p[pos]) * self.inv) % MODULUS

    def insert(self, gap: int, char: int) -> int:
        """Hash of the word with `char` inserted after position `gap`."""
        p = self.prefix[gap]
        return (p + char * self.powers[gap + 1] + (self.total - p) * self.seed) % MODULUS


@dataclass(frozen=True)
class EditOp:
    """One edit: kind is "substitute", "delete", "insert" or "identity".

    For substitute/delete, pos is a 1-based character position; for insert,
    pos is a gap in [0, m].  char is the new symbol (may be WILDCARD).
    """

    kind: str
    pos: int = 0
    char: int = 0


IDENTITY = EditOp("identity")


def apply_edit(word, op: EditOp) -> tuple[int, ...]:
    """Reference application of an edit, returning a symbol tuple."""
    w = tuple(word)
    if op.kind == "identity":
        return w
    if op.kind == "substitute":
        return w[: op.pos - 1] + (op.char,) + w[op.pos :]
    if op.kind == "delete":
        return w[: op.pos - 1] + w[op.pos :]
    if op.kind == "insert":
        return w[: op.pos] + (op.char,) + w[op.pos :]
    raise ValueError(f"unknown edit kind {op.kind!r}")


def edit_hash(ctx: HashContext, op: EditOp) -> int:
    """Hash of apply_edit(ctx.word, op), in O(1) arithmetic operations."""
    if op.kind == "identity":
        return ctx.total
    if op.kind == "substitute":
        return ctx.substitute(op.pos, op.char)
    if op.kind == "delete":
        return ctx.delete(op.pos)
    if op.kind == "insert":
        return ctx.insert(op.pos, op.char)
    raise ValueError(f"unknown edit kind {op.kind!r}")
