"""Laurent series operations against direct coefficient-level oracles.

Products and quotients are re-derived in the tests by explicit double
sums over field tables; the derivative by the termwise power rule;
decimation and power substitution by index arithmetic.  Oracles never
call the operation under test.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqwords.field import field
from fqwords.laurent import (
    LaurentSeries,
    RationalFunction,
    constant_series,
    ls_add,
    ls_cartier,
    ls_cauchy_mul,
    ls_coefficient,
    ls_derivative,
    ls_equal_up_to,
    ls_hadamard,
    ls_mul_poly,
    ls_mul_rational,
    ls_negate,
    ls_shift,
    ls_substitute_power,
    monomial_series,
    poly_series,
    series_from_word,
    zero_series,
)
from fqwords.words import InfiniteWord, cantor_word, periodic_word

WINDOW = 80


def _random_series(spec, rng, n0_max=3):
    """A random series with small principal part and periodic tail."""
    n0 = int(rng.integers(0, n0_max + 1))
    principal = tuple(int(x) for x in rng.integers(0, spec.q, size=n0))
    period = [int(x) for x in rng.integers(0, spec.q, size=rng.integers(1, 6))]
    pre = [int(x) for x in rng.integers(0, spec.q, size=rng.integers(0, 4))]
    tail = periodic_word(pre, period, field=spec)
    return LaurentSeries(spec, n0, principal, tail)


def _coeff(f, n):
    if n < -f.n0:
        return 0
    return f.coefficient(n).index


def _window(f, lo, hi):
    return [_coeff(f, n) for n in range(lo, hi)]


# ---------------------------------------------------------------------------
# construction and access


def test_series_from_word_round_trip():
    spec = field(3)
    w = cantor_word(field=spec)
    f = series_from_word(w, spec)
    assert f.n0 == 0
    pref = w.prefix(100)
    assert all(f.coefficient(n).index == pref[n] for n in range(100))
    with pytest.raises(ValueError, match="below principal part"):
        f.coefficient(-1)


def test_poly_and_monomial_series():
    spec = field(5)
    f = poly_series([2, 0, 3], spec)  # 2 + 3T^2
    assert _window(f, -4, 4) == [0, 0, 3, 0, 2, 0, 0, 0]
    g = monomial_series(spec, -3)
    assert _coeff(g, 3) == 1 and _coeff(g, 2) == 0 and _coeff(g, -1) == 0
    h = monomial_series(spec, 2)
    assert _coeff(h, -2) == 1
    c = constant_series(4, spec)
    assert _coeff(c, 0) == 4 and _coeff(c, 1) == 0


def test_window_zero_extends_above_depth():
    spec = field(3)
    f = poly_series([1], spec)
    assert list(f.window(-3, 2)) == [0, 0, 0, 1, 0]


# ---------------------------------------------------------------------------
# linear operations


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 4, 5, 9]))
@settings(max_examples=40, deadline=None)
def test_add_negate_are_pointwise(seed, q):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng)
    g = _random_series(spec, rng)
    s = ls_add(f, g)
    for n in range(-max(f.n0, g.n0), WINDOW):
        assert _coeff(s, n) == spec.add(_coeff(f, n), _coeff(g, n))
    z = ls_add(f, ls_negate(f))
    assert all(_coeff(z, n) == 0 for n in range(-f.n0, WINDOW))
    h = ls_hadamard(f, g)
    for n in range(0, WINDOW):
        assert _coeff(h, n) == spec.mul(_coeff(f, n), _coeff(g, n))


@given(st.integers(0, 2**32 - 1), st.integers(-6, 6))
@settings(max_examples=40, deadline=None)
def test_shift_moves_indices(seed, k):
    spec = field(3)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng)
    g = ls_shift(f, k)
    for n in range(-g.n0, WINDOW):
        assert _coeff(g, n) == _coeff(f, n + k)
    back = ls_shift(g, -k)
    for n in range(-f.n0, WINDOW):
        assert _coeff(back, n) == _coeff(f, n)


# ---------------------------------------------------------------------------
# multiplication


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 4, 9]))
@settings(max_examples=30, deadline=None)
def test_mul_poly_matches_double_sum(seed, q):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng)
    deg = int(rng.integers(0, 5))
    b = [int(x) for x in rng.integers(0, spec.q, size=deg + 1)]
    if not any(b):
        b[-1] = 1
    g = ls_mul_poly(b, f)
    for n in range(-g.n0, WINDOW):
        want = 0
        for j, bj in enumerate(b):
            want = spec.add(want, spec.mul(bj, _coeff(f, n + j)))
        assert _coeff(g, n) == want


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 4, 9]))
@settings(max_examples=30, deadline=None)
def test_cauchy_mul_matches_double_sum(seed, q):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng, n0_max=2)
    g = _random_series(spec, rng, n0_max=2)
    N = 50
    h = ls_cauchy_mul(f, g, N)
    lo = -(f.n0 + g.n0)
    for n in range(lo, N + 1):
        want = 0
        for i in range(-f.n0, n + g.n0 + 1):
            want = spec.add(want, spec.mul(_coeff(f, i), _coeff(g, n - i)))
        assert _coeff(h, n) == want, n
    with pytest.raises(ValueError, match="validity horizon"):
        h.tail.prefix(N + 2)


def test_cauchy_units_multiply_to_one():
    spec = field(3)
    one = constant_series(1, spec)
    f = ls_cauchy_mul(one, one, 30)
    assert _window(f, 0, 10) == [1] + [0] * 9


# ---------------------------------------------------------------------------
# division / rational multiplication


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 9]))
@settings(max_examples=30, deadline=None)
def test_mul_rational_inverts_through_mul_poly(seed, q):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng, n0_max=0)
    num = [int(x) for x in rng.integers(0, spec.q, size=rng.integers(1, 4))]
    den = [int(x) for x in rng.integers(0, spec.q, size=rng.integers(1, 4))]
    if not any(num):
        num[-1] = 1
    if not any(den):
        den[0] = 1
    r = RationalFunction(spec, num, den)
    g = ls_mul_rational(r, f)
    lhs = ls_mul_poly(den, g)
    rhs = ls_mul_poly(num, f)
    for n in range(-max(lhs.n0, rhs.n0), WINDOW):
        assert _coeff(lhs, n) == _coeff(rhs, n)


def test_rational_expansion_known_values():
    spec = field(3)
    # 1/(T - 1) = T^-1 + T^-2 + ... : geometric tail of ones
    r = RationalFunction(spec, [1], [spec.neg(1), 1])
    f = ls_mul_rational(r, constant_series(1, spec))
    assert _window(f, 0, 6) == [0, 1, 1, 1, 1, 1]
    assert r.periodicity == (1, 1)


def test_rational_periodicity_minimality():
    spec = field(3)
    # 1/(T^2+1): coefficients cycle 1,0,2,0 from index 2
    r = RationalFunction(spec, [1], [1, 0, 1])
    s0, l0 = r.periodicity
    w = r.expansion().tail
    pref = list(w.prefix(s0 + 6 * l0))
    assert pref[s0 : s0 + 5 * l0] == pref[s0 : s0 + l0] * 5
    # no shorter period works at the same offset
    for shorter in range(1, l0):
        if l0 % shorter:
            continue
        assert pref[s0 : s0 + shorter] * (l0 // shorter) != pref[s0 : s0 + l0]


def test_division_by_zero_denominator_rejected():
    spec = field(3)
    with pytest.raises(ValueError):
        RationalFunction(spec, [1], [0, 0])


# ---------------------------------------------------------------------------
# derivative


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5, 9]),
       st.integers(1, 3))
@settings(max_examples=30, deadline=None)
def test_derivative_matches_power_rule(seed, q, k):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng)
    g = ls_derivative(f, k)
    # k-fold derivative of T^(-m) is (-m)(-m-1)...(-m-k+1) T^(-m-k)
    for n in range(-g.n0, WINDOW):
        m = n - k  # source index: coefficient of T^(-m)
        fac = 1
        for i in range(k):
            fac = (fac * (-m - i)) % spec.p
        want = spec.mul(spec.embed_int(fac), _coeff(f, m))
        assert _coeff(g, n) == want, (n, k)


def test_derivative_kills_pth_powers():
    spec = field(3)
    f = series_from_word(cantor_word(field=spec), spec)
    g = ls_derivative(ls_substitute_power(f, 3), 1)
    assert all(_coeff(g, n) == 0 for n in range(-g.n0, 100))


# ---------------------------------------------------------------------------
# decimation and substitution


@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]))
@settings(max_examples=30, deadline=None)
def test_cartier_is_stride_slice(seed, q):
    spec = field(q)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng, n0_max=0)
    for r in range(q):
        g = ls_cartier(f, r)
        for n in range(0, 40):
            assert _coeff(g, n) == _coeff(f, q * n + r)
    with pytest.raises(ValueError):
        ls_cartier(f, q)


@given(st.integers(0, 2**32 - 1), st.integers(1, 5))
@settings(max_examples=30, deadline=None)
def test_substitute_power_spreads_indices(seed, k):
    spec = field(3)
    rng = np.random.default_rng(seed)
    f = _random_series(spec, rng, n0_max=0)
    g = ls_substitute_power(f, k)
    for n in range(0, 60):
        want = _coeff(f, n // k) if n % k == 0 else 0
        assert _coeff(g, n) == want


@pytest.mark.parametrize("q", [2, 3])
def test_cartier_reconstruction(q):
    from fqwords.carlitz import pq_word

    spec = field(q)
    f = series_from_word(pq_word(q), spec)
    acc = None
    for r in range(q):
        term = ls_shift(ls_substitute_power(ls_cartier(f, r), q), -r)
        acc = term if acc is None else ls_add(acc, term)
    assert ls_equal_up_to(acc, f, 3000)


def test_substitute_requires_power_series():
    spec = field(3)
    f = monomial_series(spec, 1)  # principal part T
    with pytest.raises(ValueError, match="principal"):
        ls_substitute_power(f, 2)
    with pytest.raises(ValueError, match="principal"):
        ls_cartier(f, 0)


# ---------------------------------------------------------------------------
# equality and misc


def test_equal_up_to_detects_differences():
    spec = field(3)
    f = constant_series(1, spec)
    g = ls_add(f, monomial_series(spec, -40))
    assert ls_equal_up_to(f, g, 39)
    assert not ls_equal_up_to(f, g, 40)
    assert ls_equal_up_to(zero_series(spec), zero_series(spec), 1000)


def test_field_mismatch_rejected():
    f = constant_series(1, field(2))
    g = constant_series(1, field(3))
    with pytest.raises(ValueError, match="field mismatch"):
        ls_add(f, g)


def test_limit_propagates_through_ops():
    spec = field(3)
    w = InfiniteWord(3, lambda n: np.ones(n, dtype=np.int16), "capped",
                     field=spec, limit=60)
    f = LaurentSeries(spec, 0, (), w)
    g = ls_mul_poly([1, 1], f)  # consumes one index of lookahead
    assert len(g.tail.prefix(59)) == 59
    with pytest.raises(ValueError):
        g.tail.prefix(60)
    h = ls_derivative(f, 2)  # gains two indices
    assert len(h.tail.prefix(62)) == 62
    with pytest.raises(ValueError):
        h.tail.prefix(63)
