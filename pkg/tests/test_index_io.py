"""Build configuration, index composition, and the file format."""

import io
from fractions import Fraction

import pytest

from editdict import BuildConfig, build_index, load, read_wordlist, save
from editdict.errors import (
    BadMagicError,
    ChecksumError,
    CompactedError,
    IndexFormatError,
    TableFullError,
    TruncatedError,
    ValidationError,
    VersionMismatchError,
)
from editdict.index_io import derive_seeds
from editdict.hashing import MODULUS
from conftest import random_pattern, random_words


def test_config_defaults():
    cfg = BuildConfig()
    assert cfg.errors == 1
    assert cfg.alpha == Fraction(7, 10)
    assert cfg.beta == 16
    assert cfg.delta == 4


def test_config_accepts_float_and_str_alpha():
    assert BuildConfig(alpha=0.7).alpha == Fraction(7, 10)
    assert BuildConfig(alpha="0.5").alpha == Fraction(1, 2)
    assert BuildConfig(alpha="3/10").alpha == Fraction(3, 10)


def test_config_validation():
    with pytest.raises(ValidationError):
        BuildConfig(errors=3)
    with pytest.raises(ValidationError):
        BuildConfig(alpha="0.1")
    with pytest.raises(ValidationError):
        BuildConfig(alpha="0.99")
    with pytest.raises(ValidationError):
        BuildConfig(beta=1)
    with pytest.raises(ValidationError):
        BuildConfig(delta=0)
    with pytest.raises(ValidationError):
        BuildConfig(rng_seed=-1)


def test_derive_seeds_deterministic_distinct():
    a = derive_seeds(42)
    b = derive_seeds(42)
    assert a == b
    assert a[0] != a[1]
    assert all(1 <= s <= MODULUS - 2 for s in a)
    assert derive_seeds(43) != a


def test_zero_error_index_has_no_stores():
    ix = build_index([b"abc"], BuildConfig(errors=0, rng_seed=1))
    assert ix.store1 is None and ix.store2 is None
    assert ix.query(b"abc", 0).matches == {b"abc"}


def test_store_entry_counts_for_known_word():
    ix = build_index([b"ALABAMA"], BuildConfig(errors=2, rng_seed=1))
    assert ix.store1.entry_count == 7
    assert ix.store2.entry_count == 21
    assert ix.word_count == 1
    assert ix.total_length == 7


def test_empty_dictionary_index():
    ix = build_index([], BuildConfig(errors=2, rng_seed=1))
    assert ix.word_count == 0
    assert ix.sigma == 0
    assert ix.query(b"abc", 2).matches == set()


def test_build_rejects_bad_word_with_position():
    with pytest.raises(ValidationError, match="word #2"):
        build_index([b"ok", b"fine", b"no\x00pe"], BuildConfig(rng_seed=1))


def _replay(ix, patterns, k=2):
    out = []
    for p in patterns:
        if k < len(p):
            r = ix.query(p, k)
            out.append((sorted(r.matches), r.stats.as_tuple()))
    return out


def test_save_load_replay_identical(rng, tmp_path):
    words = random_words(rng, 250, 1, 14, alphabet_size=9)
    patterns = [random_pattern(rng, words, alphabet_size=9, max_len=14) for _ in range(80)]
    for compact in (False, True):
        for sig in (False, True):
            ix = build_index(words, BuildConfig(errors=2, use_signatures=sig,
                                                compact=compact, rng_seed=17))
            path = tmp_path / f"ix_{compact}_{sig}.bin"
            save(ix, path)
            back = load(path)
            assert _replay(back, patterns) == _replay(ix, patterns)
            assert back.word_count == ix.word_count
            assert back.sigma == ix.sigma
            assert back.config == ix.config


def test_two_builds_byte_identical(rng):
    words = random_words(rng, 300, 1, 18)
    cfg = BuildConfig(errors=2, use_signatures=True, compact=True, rng_seed=123)
    a, b = io.BytesIO(), io.BytesIO()
    save(build_index(list(words), cfg), a)
    save(build_index(list(words), cfg), b)
    assert a.getvalue() == b.getvalue()


def test_saved_then_resaved_identical(rng, tmp_path):
    words = random_words(rng, 100, 1, 12)
    ix = build_index(words, BuildConfig(errors=1, compact=True, rng_seed=3))
    p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
    save(ix, p1)
    save(load(p1), p2)
    assert p1.read_bytes() == p2.read_bytes()


def _saved_blob(words=(b"alpha", b"beta", b"gamma"), **cfg):
    buf = io.BytesIO()
    save(build_index(list(words), BuildConfig(rng_seed=1, **cfg)), buf)
    return bytearray(buf.getvalue())


def test_load_truncated_file():
    blob = _saved_blob()
    with pytest.raises(TruncatedError):
        load(bytes(blob[: len(blob) - 9]))
    with pytest.raises(TruncatedError):
        load(b"ASDI")


def test_load_flipped_body_byte_is_checksum_error():
    blob = _saved_blob()
    blob[70] ^= 0xFF  # inside the exact-dictionary section
    with pytest.raises(ChecksumError):
        load(bytes(blob))


def test_load_bad_magic():
    blob = _saved_blob()
    blob[0:4] = b"JUNK"
    with pytest.raises(BadMagicError):
        load(bytes(blob))


def test_load_bad_version():
    blob = _saved_blob()
    blob[4] = 99
    with pytest.raises(VersionMismatchError):
        load(bytes(blob))


def test_load_trailing_garbage():
    blob = _saved_blob()
    with pytest.raises(IndexFormatError):
        load(bytes(blob) + b"extra")


def test_load_accepts_path_bytes_and_file(tmp_path):
    words = [b"one", b"two"]
    ix = build_index(words, BuildConfig(rng_seed=5))
    path = tmp_path / "ix.bin"
    save(ix, path)
    blob = path.read_bytes()
    for source in (path, str(path), blob, io.BytesIO(blob)):
        assert load(source).query(b"one", 1).matches == {b"one"}


def test_insert_word_updates_everything(rng):
    words = random_words(rng, 800, 4, 9)
    ix = build_index(words[:600], BuildConfig(errors=2, rng_seed=6))
    w = b"qqqqqqqqqqqq"  # length 12, absent from the build
    assert ix.insert_word(w) is True
    assert ix.insert_word(w) is False
    assert ix.query(w, 0).matches == {w}
    assert w in ix.query(w[:-1], 1).matches
    assert w in ix.query(w[:-2], 2).matches


def test_insert_word_atomic_on_store_overflow():
    # Exact table would fit, but the level-1 store will not: nothing changes.
    ix = build_index([b"abcd", b"bcda", b"cdab"], BuildConfig(errors=1, rng_seed=6))
    store_before = ix.store1.entry_count
    with pytest.raises(TableFullError):
        ix.insert_word(b"abcdefghijabcdefghij")
    assert ix.store1.entry_count == store_before
    assert not ix.contains(b"abcdefghijabcdefghij")
    assert ix.word_count == 3


def test_insert_raises_sigma():
    ix = build_index([b"abcd", b"bcda", b"dcba", b"badc"], BuildConfig(errors=1, rng_seed=6))
    assert ix.sigma == ord("d")
    assert ix.insert_word(b"az") is True
    assert ix.sigma == ord("z")
    assert ix.store1.sigma == ord("z")


def test_insert_into_compacted_index():
    ix = build_index([b"abc"], BuildConfig(errors=1, compact=True, rng_seed=1))
    with pytest.raises(CompactedError):
        ix.insert_word(b"xyz")


def test_read_wordlist(tmp_path):
    path = tmp_path / "words.txt"
    path.write_bytes(b"alpha\r\nbeta\n\nalpha\ngamma")
    assert read_wordlist(path) == [b"alpha", b"beta", b"gamma"]
    assert read_wordlist(b"a\nb\n") == [b"a", b"b"]
    with io.BytesIO(b"x\ny\n") as f:
        assert read_wordlist(f) == [b"x", b"y"]


def test_read_wordlist_rejects_nul():
    with pytest.raises(ValidationError, match="line 2"):
        read_wordlist(b"good\nb\x00ad\n")


def test_table_report_includes_stores():
    ix = build_index([b"ab", b"cde"], BuildConfig(errors=2, rng_seed=1))
    names = [name for name, _, _ in ix.table_report()]
    assert "store[level=1]" in names and "store[level=2]" in names


def test_build_index_kwargs_shortcut():
    ix = build_index([b"abc"], errors=2, rng_seed=9, compact=True)
    assert ix.errors == 2
    assert ix.compacted
