"""Window-counting engines against a direct set-of-tuples oracle."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqwords.complexity import (
    ComplexityProfile,
    entropy_estimate,
    factor_set,
    morse_hedlund_diagnostic,
    profile_fast,
    profile_naive,
    profile_word,
)
from fqwords.words import Morphism, QuadraticIrrational, morphic_fixed_point, \
    periodic_word, rotation_word


def _brute_counts(arr, max_m):
    arr = list(arr)
    return tuple(
        len({tuple(arr[i : i + m]) for i in range(len(arr) - m + 1)})
        for m in range(1, max_m + 1)
    )


@given(st.lists(st.integers(0, 4), min_size=1, max_size=120))
@settings(max_examples=120, deadline=None)
def test_engines_match_brute_force(symbols):
    arr = np.asarray(symbols, dtype=np.int64)
    max_m = arr.size
    want = _brute_counts(arr, max_m)
    assert profile_naive(arr, max_m).counts == want
    assert profile_fast(arr, max_m).counts == want


@given(st.lists(st.integers(0, 1), min_size=1, max_size=400),
       st.integers(1, 50))
@settings(max_examples=60, deadline=None)
def test_engines_agree_on_binary_words(symbols, max_m):
    arr = np.asarray(symbols, dtype=np.int64)
    max_m = min(max_m, arr.size)
    assert profile_naive(arr, max_m).counts == profile_fast(arr, max_m).counts


def test_constant_word():
    arr = np.zeros(500, dtype=np.int64)
    prof = profile_fast(arr, 20)
    assert prof.counts == (1,) * 20


def test_purely_periodic_word_complexity_caps_at_period():
    w = periodic_word([], [0, 1, 1, 0, 1])
    arr = w.prefix(1000)
    prof = profile_fast(arr, 30)
    assert prof.counts == _brute_counts(arr, 30)
    # a period-5 word has at most 5 distinct windows of any length
    assert max(prof.counts) == 5 and prof.p(30) == 5


def test_sturmian_profile_is_m_plus_1():
    w = rotation_word(QuadraticIrrational(-1, 1, 1, 2))
    prof = profile_fast(w.prefix(200000), 40)
    assert all(prof.p(m) == m + 1 for m in range(1, 41))


def test_full_shift_profile():
    rng = np.random.default_rng(7)
    arr = rng.integers(0, 2, size=1 << 16).astype(np.int64)
    prof = profile_fast(arr, 8)
    # a long random binary word hits every short window
    assert all(prof.p(m) == 2**m for m in range(1, 9))


def test_thue_morse_profile_values():
    # p(1..8) = 2,4,6,10,12,16,20,22 for the Thue-Morse word
    w = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0)
    prof = profile_fast(w.prefix(1 << 15), 8)
    assert prof.counts == (2, 4, 6, 10, 12, 16, 20, 22)


def test_profiles_validate_invariants():
    w = rotation_word(QuadraticIrrational(-1, 1, 1, 3))
    for engine in (profile_fast, profile_naive):
        prof = engine(w.prefix(5000), 25)
        prof.validate()


def test_profile_word_convenience():
    w = periodic_word([], [0, 1])
    prof = profile_word(w, 64, 5)
    assert prof.counts == (2, 2, 2, 2, 2)
    assert prof.prefix_length == 64


def test_max_m_beyond_prefix_raises():
    with pytest.raises(ValueError):
        profile_fast(np.zeros(5, dtype=np.int64), 6)
    with pytest.raises(ValueError):
        profile_naive(np.zeros(5, dtype=np.int64), 6)


def test_profile_rejects_bad_m():
    prof = profile_fast(np.zeros(10, dtype=np.int64), 3)
    with pytest.raises(IndexError):
        prof.p(0)
    with pytest.raises(IndexError):
        prof.p(4)


@given(st.lists(st.integers(0, 3), min_size=4, max_size=60),
       st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_factor_set_matches_windows(symbols, m):
    arr = np.asarray(symbols, dtype=np.int64)
    m = min(m, arr.size)
    want = {tuple(symbols[i : i + m]) for i in range(len(symbols) - m + 1)}
    assert factor_set(arr, m) == want


def test_factor_set_wide_alphabet_falls_back():
    # alphabet large enough that base-sigma codes would overflow int64
    rng = np.random.default_rng(3)
    arr = rng.integers(0, 1 << 16, size=300).astype(np.int64)
    m = 5
    want = {tuple(int(x) for x in arr[i : i + m]) for i in range(arr.size - m + 1)}
    assert factor_set(arr, m) == want


def test_entropy_estimate_formula():
    prof = ComplexityProfile(100, 4, (2, 4, 8, 16), "x", "fast", 2)
    assert entropy_estimate(prof, 4, 2) == pytest.approx(math.log2(16) / 4)
    assert entropy_estimate(prof, 3, 3) == pytest.approx(math.log(8, 3) / 3)


def test_morse_hedlund_flags_periodic_prefixes():
    w = periodic_word([1, 1, 1], [0, 1])
    prof = profile_fast(w.prefix(4000), 30)
    report = morse_hedlund_diagnostic(prof)
    assert report.candidate_m is not None
    assert not report.strictly_increasing
    sturmian = profile_fast(
        rotation_word(QuadraticIrrational(-1, 1, 1, 2)).prefix(4000), 30
    )
    report = morse_hedlund_diagnostic(sturmian)
    assert report.candidate_m is None
    assert report.strictly_increasing


def test_csv_rows_shape():
    prof = profile_fast(np.zeros(10, dtype=np.int64), 3, source="zeros")
    rows = list(prof.csv_rows())
    assert rows == [("zeros", "fast", 10, 1, 1), ("zeros", "fast", 10, 2, 1),
                    ("zeros", "fast", 10, 3, 1)]
