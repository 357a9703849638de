"""Word generators against independent oracles.

Morphic words are compared with direct in-test morphism iteration,
automatic words with the morphic route, digit-defined words (cantor,
champernowne) with per-index digit computations, and rotation words
with a 60-digit Decimal evaluation of floor(n*alpha).
"""

import math
from decimal import Decimal, getcontext

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqwords.field import field
from fqwords.words import (
    InfiniteWord,
    Morphism,
    QuadraticIrrational,
    automatic_word,
    cantor_word,
    champernowne_word,
    load_dfao,
    morphic_fixed_point,
    periodic_word,
    rotation_word,
    word_pointwise_add,
    word_pointwise_mul,
)

getcontext().prec = 60


# ---------------------------------------------------------------------------
# periodic


@given(
    st.lists(st.integers(0, 3), max_size=6),
    st.lists(st.integers(0, 3), min_size=1, max_size=6),
    st.integers(1, 200),
)
@settings(max_examples=80, deadline=None)
def test_periodic_word_cycles(pre, per, n):
    w = periodic_word(pre, per)
    want = [
        pre[i] if i < len(pre) else per[(i - len(pre)) % len(per)]
        for i in range(n)
    ]
    assert list(w.prefix(n)) == want


def test_periodic_word_rejects_empty_period():
    with pytest.raises(ValueError):
        periodic_word([0], [])


# ---------------------------------------------------------------------------
# morphic


def _iterate_morphism(images, seed, n):
    word = [seed]
    while len(word) < n:
        word = [x for a in word for x in images[a]]
    return word[:n]


MORPHISMS = [
    (((0, 1), (1, 0)), 0),  # Thue-Morse
    (((0, 1), (0,)), 0),  # Fibonacci
    (((0, 0, 0, 1), (1, 1)), 0),
    (((0, 1, 0, 1), (1, 1)), 0),
    (((0,), (1, 1, 0)), 1),
]


@pytest.mark.parametrize("images,seed", MORPHISMS)
def test_morphic_fixed_point_matches_iteration(images, seed):
    w = morphic_fixed_point(Morphism(images), seed)
    assert list(w.prefix(4096)) == _iterate_morphism(images, seed, 4096)


def test_morphic_with_coding():
    # Thue-Morse collapsed through a coding that merges nothing
    w = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0, coding=(1, 0))
    tm = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0)
    assert list(w.prefix(512)) == [1 - x for x in tm.prefix(512)]


def test_morphism_rejects_non_prolongable_seed():
    with pytest.raises(ValueError):
        morphic_fixed_point(Morphism(((0,), (1, 1, 0))), 0)


def test_thue_morse_known_prefix():
    w = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0)
    assert list(w.prefix(16)) == [0, 1, 1, 0, 1, 0, 0, 1,
                                  1, 0, 0, 1, 0, 1, 1, 0]


def test_thue_morse_parity_oracle():
    w = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0)
    got = w.prefix(2048)
    for n in range(2048):
        assert got[n] == bin(n).count("1") % 2


# ---------------------------------------------------------------------------
# automatic


TM_DFAO = """# Thue-Morse: parity of binary digit sum
base 2
states 2
initial 0
trans 0 0 0
trans 0 1 1
trans 1 0 1
trans 1 1 0
out 0 0
out 1 1
"""


def test_automatic_thue_morse_matches_morphic():
    dfao = load_dfao(TM_DFAO)
    w = automatic_word(dfao)
    tm = morphic_fixed_point(Morphism(((0, 1), (1, 0))), 0)
    assert np.array_equal(w.prefix(1 << 12), tm.prefix(1 << 12))


# ---------------------------------------------------------------------------
# digit-defined words


def test_cantor_word_digit_oracle():
    w = cantor_word()
    got = w.prefix(3000)
    for n in range(3000):
        digits_ok = True
        k = n
        while k:
            if k % 3 == 1:
                digits_ok = False
                break
            k //= 3
        assert got[n] == (1 if digits_ok else 0), n


@pytest.mark.parametrize("b", [2, 10])
def test_champernowne_digit_oracle(b):
    w = champernowne_word(b)
    count = 2000

    def to_digits(k):
        if k == 0:
            return [0]
        out = []
        while k:
            out.append(k % b)
            k //= b
        return out[::-1]

    stream = []
    k = 0
    while len(stream) < count:
        stream.extend(to_digits(k))
        k += 1
    assert list(w.prefix(count)) == stream[:count]


# ---------------------------------------------------------------------------
# rotation words


def _decimal_rotation_prefix(a, b, c, d, n):
    alpha = (Decimal(a) + Decimal(b) * Decimal(d).sqrt()) / Decimal(c)
    floors = [int(Decimal(k) * alpha) for k in range(n + 1)]
    return [floors[k + 1] - floors[k] for k in range(n)]


@pytest.mark.parametrize("a,b,c,d", [
    (-1, 1, 1, 2),
    (-1, 1, 1, 3),
    (-1, 1, 2, 5),
    (1, 1, 3, 2),
    (-2, 1, 2, 7),
])
def test_rotation_word_decimal_oracle(a, b, c, d):
    alpha = QuadraticIrrational(a, b, c, d)
    w = rotation_word(alpha)
    assert list(w.prefix(3000)) == _decimal_rotation_prefix(a, b, c, d, 3000)


@given(st.integers(1, 10**6))
@settings(max_examples=120, deadline=None)
def test_floor_times_decimal_oracle(n):
    alpha = QuadraticIrrational(-1, 1, 1, 2)
    exact = alpha.floor_times(n)
    dec = int(Decimal(n) * (Decimal(2).sqrt() - 1))
    assert exact == dec


def test_quadratic_irrational_validation():
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 1, 1, 4)  # d not squarefree
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 0, 1, 2)  # rational
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 1, 0, 2)  # zero denominator
    with pytest.raises(ValueError):
        QuadraticIrrational(0, 1, 1, 2)  # sqrt(2) > 1
    with pytest.raises(ValueError):
        QuadraticIrrational(0, -1, 1, 2)  # negative


def test_rotation_word_symbol_density_approximates_alpha():
    alpha = QuadraticIrrational(-1, 1, 1, 2)
    w = rotation_word(alpha)
    n = 100000
    ones = int(np.sum(w.prefix(n)))
    assert abs(ones / n - (math.sqrt(2) - 1)) < 1e-4


# ---------------------------------------------------------------------------
# InfiniteWord mechanics


def test_prefix_grows_and_is_stable():
    calls = []

    def fill(n):
        calls.append(n)
        return np.arange(n) % 4

    w = InfiniteWord(4, fill, "ramp")
    a = list(w.prefix(10))
    b = list(w.prefix(5))
    c = list(w.prefix(300))
    assert a == c[:10] and b == a[:5]
    assert w.symbol_at(250) == 250 % 4


def test_limit_blocks_reads_beyond_horizon():
    w = InfiniteWord(3, lambda n: np.zeros(n, dtype=np.int16), "capped",
                     limit=100, limit_msg="beyond validity horizon")
    assert len(w.prefix(100)) == 100
    with pytest.raises(ValueError, match="beyond validity horizon"):
        w.prefix(101)


def test_pointwise_ops_match_tables():
    spec = field(3)
    a = periodic_word([], [0, 1, 2, 1], field=spec)
    b = periodic_word([2], [1, 2], field=spec)
    s = word_pointwise_add(a, b, spec)
    h = word_pointwise_mul(a, b, spec)
    pa, pb = a.prefix(200), b.prefix(200)
    assert list(s.prefix(200)) == [(x + y) % 3 for x, y in zip(pa, pb)]
    assert list(h.prefix(200)) == [(x * y) % 3 for x, y in zip(pa, pb)]


def test_pointwise_rejects_out_of_range_symbols():
    spec = field(2)
    a = periodic_word([], [0, 1, 2])
    b = periodic_word([], [0, 1])
    with pytest.raises(ValueError):
        word_pointwise_add(a, b, spec).prefix(4)


def test_pointwise_propagates_validity_limit():
    spec = field(3)
    a = InfiniteWord(3, lambda n: np.zeros(n, dtype=np.int16), "capped",
                     field=spec, limit=50)
    b = periodic_word([], [1], field=spec)
    s = word_pointwise_add(a, b, spec)
    assert list(s.prefix(50)) == [1] * 50
    with pytest.raises(ValueError):
        s.prefix(51)
