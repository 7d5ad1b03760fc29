"""Build pipeline and bit-exact serialization of the composed index.

File layout (all little-endian):

    offset  size  field
    0       4     magic "ASDI"
    4       1     format version (1)
    5       1     checksum id (1 = crc32 of body in the high 32 bits,
                  adler32 in the low 32 bits)
    6       1     flags: bit0 signatures, bit1 compacted
    7       1     error level (0, 1 or 2)
    8       2     load factor numerator
    10      2     load factor denominator
    12      1     beta (inline-word length threshold)
    13      1     delta (rank sampling interval, in 32-bit words)
    14      1     sigma (alphabet size = largest byte value stored)
    15      1     reserved (0)
    16      4     bucket seed
    20      4     signature seed
    24      8     build rng seed (echo)
    32      8     exact-dictionary section length
    40      8     level-1 store section length (0 if absent)
    48      8     level-2 store section length (0 if absent)
    56      ...   sections, in that order
    end-8   8     checksum over everything before it

The load factor is kept as a rational so capacity arithmetic is exact and
identical on every platform; building twice from the same words and seed
produces byte-identical files.
"""

from __future__ import annotations

import random
import struct
import zlib
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path

from . import query_engine
from .errors import (
    BadMagicError,
    ChecksumError,
    CompactedError,
    IndexFormatError,
    TruncatedError,
    ValidationError,
    VersionMismatchError,
)
from .exact_dict import ExactDictionary, build_exact
from .hashing import random_seed
from .subst_store import SubstStore, build_store, entries_for
from .util import validate_word, validate_words

MAGIC = b"ASDI"
VERSION = 1
CHECKSUM_ID = 1
_HEADER = struct.Struct("<4sBBBBHHBBBBIIQQQQ")

ALPHA_MIN = Fraction(1, 5)
ALPHA_MAX = Fraction(19, 20)


def _as_fraction(alpha) -> Fraction:
    if isinstance(alpha, Fraction):
        f = alpha
    elif isinstance(alpha, float):
        f = Fraction(alpha).limit_denominator(1000)
    else:
        f = Fraction(alpha)
    if not ALPHA_MIN <= f <= ALPHA_MAX:
        raise ValidationError(f"load factor {alpha} outside [{ALPHA_MIN}, {ALPHA_MAX}]")
    if f.numerator > 0xFFFF or f.denominator > 0xFFFF:
        raise ValidationError("load factor needs numerator/denominator below 2**16")
    return f


@dataclass(frozen=True)
class BuildConfig:
    """Everything that determines the built index, bit for bit."""

    errors: int = 1
    alpha: Fraction = Fraction(7, 10)
    use_signatures: bool = True
    compact: bool = False
    beta: int = 16
    delta: int = 4
    rng_seed: int = 1

    def __post_init__(self):
        if self.errors not in (0, 1, 2):
            raise ValidationError("errors must be 0, 1 or 2")
        object.__setattr__(self, "alpha", _as_fraction(self.alpha))
        if not 2 <= self.beta <= 255:
            raise ValidationError("beta must be in [2, 255]")
        if not 1 <= self.delta <= 255:
            raise ValidationError("delta must be in [1, 255]")
        if not 0 <= self.rng_seed < 2**64:
            raise ValidationError("rng_seed must fit in 64 bits")


def derive_seeds(rng_seed: int) -> tuple[int, int]:
    """Two independent polynomial seeds, deterministic in the build seed."""
    rng = random.Random(rng_seed)
    bucket = random_seed(rng)
    sig = random_seed(rng)
    while sig == bucket:
        sig = random_seed(rng)
    return bucket, sig


class Index:
    """The composed dictionary: exact membership plus 0-2 substitution stores."""

    __slots__ = ("config", "exact", "store1", "store2", "bucket_seed", "sig_seed", "sigma")

    def __init__(self, config: BuildConfig, exact: ExactDictionary,
                 store1: SubstStore | None, store2: SubstStore | None,
                 bucket_seed: int, sig_seed: int, sigma: int):
        self.config = config
        self.exact = exact
        self.store1 = store1
        self.store2 = store2
        self.bucket_seed = bucket_seed
        self.sig_seed = sig_seed
        self.sigma = sigma

    @property
    def errors(self) -> int:
        return self.config.errors

    @property
    def compacted(self) -> bool:
        return self.config.compact

    @property
    def word_count(self) -> int:
        return self.exact.word_count

    @property
    def total_length(self) -> int:
        return self.exact.total_length

    def query(self, pattern, k: int) -> query_engine.QueryResult:
        return query_engine.query(self, pattern, k)

    def contains(self, word) -> bool:
        return self.exact.contains(word)

    def insert_word(self, word) -> bool:
        """Add a word and all of its store entries; False if already present.

        Checks headroom everywhere before touching anything, so a
        TableFullError leaves the index unchanged.
        """
        if self.compacted:
            raise CompactedError("cannot insert into a compacted index")
        validate_word(word)
        word = bytes(word)
        if self.exact.contains(word):
            return False
        m = len(word)
        self.exact.check_headroom(m)
        if self.store1 is not None:
            self.store1.check_headroom(entries_for(m, 1))
        if self.store2 is not None:
            self.store2.check_headroom(entries_for(m, 2))
        self.exact.insert_word(word)
        if self.store1 is not None:
            self.store1._insert_word_entries(word)
        if self.store2 is not None:
            self.store2._insert_word_entries(word)
        top = max(word)
        if top > self.sigma:
            self.sigma = top
            if self.store1 is not None:
                self.store1.sigma = top
            if self.store2 is not None:
                self.store2.sigma = top
        return True

    def table_report(self) -> list[tuple[str, int, int]]:
        """(table, entries, capacity) rows across all components."""
        rows = self.exact.table_report()
        for store in (self.store1, self.store2):
            if store is not None:
                rows.append((f"store[level={store.level}]", store.entry_count, store.capacity))
        return rows


def build_index(words, config: BuildConfig | None = None, **overrides) -> Index:
    """Build the full index for a word list.

    `words` is an iterable of byte strings; duplicates are dropped and
    invalid words rejected with their input position.  Keyword overrides
    are applied on top of the given (or default) config.
    """
    if config is None:
        config = BuildConfig(**overrides)
    elif overrides:
        config = replace(config, **overrides)
    words = validate_words(words)
    bucket_seed, sig_seed = derive_seeds(config.rng_seed)
    sigma = max((max(w) for w in words), default=0)
    exact = build_exact(words, config.alpha, config.beta, bucket_seed, validated=True)
    store1 = store2 = None
    if config.errors >= 1:
        store1 = build_store(words, 1, config.alpha, config.use_signatures,
                             bucket_seed, sig_seed, sigma, validated=True)
    if config.errors >= 2:
        store2 = build_store(words, 2, config.alpha, config.use_signatures,
                             bucket_seed, sig_seed, sigma, validated=True)
    if config.compact:
        exact.compact(config.delta)
        if store1 is not None:
            store1.compact(config.delta)
        if store2 is not None:
            store2.compact(config.delta)
    return Index(config, exact, store1, store2, bucket_seed, sig_seed, sigma)


def _checksum(data) -> int:
    return (zlib.crc32(data) << 32) | zlib.adler32(data)


def save(index: Index, sink) -> int:
    """Serialize to a path or binary file object; returns bytes written."""
    cfg = index.config
    exact_bytes = index.exact.to_bytes()
    s1 = index.store1.to_bytes() if index.store1 is not None else b""
    s2 = index.store2.to_bytes() if index.store2 is not None else b""
    flags = (1 if cfg.use_signatures else 0) | (2 if cfg.compact else 0)
    header = _HEADER.pack(
        MAGIC, VERSION, CHECKSUM_ID, flags, cfg.errors,
        cfg.alpha.numerator, cfg.alpha.denominator,
        cfg.beta, cfg.delta, index.sigma, 0,
        index.bucket_seed, index.sig_seed, cfg.rng_seed,
        len(exact_bytes), len(s1), len(s2),
    )
    body = header + exact_bytes + s1 + s2
    blob = body + struct.pack("<Q", _checksum(body))
    if hasattr(sink, "write"):
        sink.write(blob)
    else:
        Path(sink).write_bytes(blob)
    return len(blob)


def load(source) -> Index:
    """Read an index back from a path, bytes, or binary file object."""
    if isinstance(source, (bytes, bytearray, memoryview)):
        blob = bytes(source)
    elif hasattr(source, "read"):
        blob = source.read()
    else:
        blob = Path(source).read_bytes()
    if len(blob) < _HEADER.size + 8:
        raise TruncatedError(f"file is {len(blob)} bytes, shorter than any valid index")
    (magic, version, checksum_id, flags, errors, num, den, beta, delta, sigma,
     _reserved, bucket_seed, sig_seed, rng_seed, exact_len, s1_len, s2_len,
     ) = _HEADER.unpack_from(blob, 0)
    if magic != MAGIC:
        raise BadMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
    if version != VERSION:
        raise VersionMismatchError(f"format version {version}, expected {VERSION}")
    if checksum_id != CHECKSUM_ID:
        raise IndexFormatError(f"unknown checksum id {checksum_id}")
    expected = _HEADER.size + exact_len + s1_len + s2_len + 8
    if len(blob) < expected:
        raise TruncatedError(f"file is {len(blob)} bytes, layout declares {expected}")
    if len(blob) > expected:
        raise IndexFormatError(f"{len(blob) - expected} trailing bytes after checksum")
    (stored_sum,) = struct.unpack_from("<Q", blob, expected - 8)
    if _checksum(blob[: expected - 8]) != stored_sum:
        raise ChecksumError("checksum mismatch, file body is corrupt")
    use_signatures = bool(flags & 1)
    compacted = bool(flags & 2)
    try:
        config = BuildConfig(
            errors=errors, alpha=Fraction(num, den), use_signatures=use_signatures,
            compact=compacted, beta=beta, delta=delta, rng_seed=rng_seed,
        )
    except (ValidationError, ZeroDivisionError) as exc:
        raise IndexFormatError(f"invalid header field: {exc}") from exc
    offset = _HEADER.size
    try:
        exact, end = ExactDictionary.from_bytes(
            blob, offset, config.alpha, beta, bucket_seed, compacted, delta
        )
        if end != offset + exact_len:
            raise IndexFormatError("exact-dictionary section length mismatch")
        offset = end
        store1 = store2 = None
        if s1_len:
            store1, end = SubstStore.from_bytes(blob, offset, bucket_seed, sig_seed, sigma)
            if end != offset + s1_len:
                raise IndexFormatError("level-1 store section length mismatch")
            offset = end
        if s2_len:
            store2, end = SubstStore.from_bytes(blob, offset, bucket_seed, sig_seed, sigma)
            if end != offset + s2_len:
                raise IndexFormatError("level-2 store section length mismatch")
    except struct.error as exc:
        raise TruncatedError(f"section parsing ran off the end: {exc}") from exc
    if errors >= 1 and store1 is None:
        raise IndexFormatError("header declares 1+ errors but the level-1 store is missing")
    if errors >= 2 and store2 is None:
        raise IndexFormatError("header declares 2 errors but the level-2 store is missing")
    return Index(config, exact, store1, store2, bucket_seed, sig_seed, sigma)


def read_wordlist(source) -> list[bytes]:
    """Load a word list: raw bytes, one word per LF-terminated line.

    Trailing CR is stripped, empty lines are skipped, duplicates are
    dropped (first occurrence wins), and a NUL byte anywhere is an error
    naming the line.
    """
    if isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    elif hasattr(source, "read"):
        data = source.read()
    else:
        data = Path(source).read_bytes()
    words = []
    seen = set()
    for lineno, line in enumerate(data.split(b"\n"), start=1):
        if line.endswith(b"\r"):
            line = line[:-1]
        if not line:
            continue
        if 0 in line:
            raise ValidationError(f"line {lineno} contains a zero byte")
        if len(line) > 0xFFFF:
            raise ValidationError(f"line {lineno} is longer than 65535 bytes")
        if line not in seen:
            seen.add(line)
            words.append(line)
    return words
