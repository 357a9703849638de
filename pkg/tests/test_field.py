"""Field arithmetic: table correctness against independent oracles.

Prime fields are compared with plain integer arithmetic mod p.  For
extension fields the tables are checked against the field axioms plus
the two facts that pin the representation: canonical indices of the
prime subfield are the residues 0..p-1, and the generator t (index p)
is a root of the defining modulus.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fqwords.field import (
    BUILTIN_MODULI,
    FieldSpec,
    ff_arith,
    ff_embed_int,
    ff_inv,
    field,
    parse_field,
)

PRIMES = [2, 3, 5, 7, 11]
EXTENSIONS = [4, 8, 9, 16, 25, 27]


@pytest.mark.parametrize("p", PRIMES)
def test_prime_field_matches_integers_mod_p(p):
    spec = field(p)
    for a in range(p):
        for b in range(p):
            assert spec.add(a, b) == (a + b) % p
            assert spec.mul(a, b) == (a * b) % p
        assert spec.neg(a) == (-a) % p
        if a:
            assert spec.mul(a, spec.inv(a)) == 1


@pytest.mark.parametrize("q", PRIMES + EXTENSIONS)
def test_field_axioms(q):
    spec = field(q)
    xs = range(spec.q)
    for a in xs:
        assert spec.add(a, 0) == a
        assert spec.mul(a, 1) == a
        assert spec.add(a, spec.neg(a)) == 0
        if a:
            assert spec.mul(a, spec.inv(a)) == 1
        for b in xs:
            assert spec.add(a, b) == spec.add(b, a)
            assert spec.mul(a, b) == spec.mul(b, a)
            for c in xs:
                assert spec.add(spec.add(a, b), c) == spec.add(a, spec.add(b, c))
                assert spec.mul(spec.mul(a, b), c) == spec.mul(a, spec.mul(b, c))
                assert spec.mul(a, spec.add(b, c)) == spec.add(
                    spec.mul(a, b), spec.mul(a, c)
                )


@pytest.mark.parametrize("q", PRIMES + EXTENSIONS)
def test_no_zero_divisors(q):
    spec = field(q)
    mul = np.asarray(spec.mul_table)
    nz = mul[1:, 1:]
    assert (nz != 0).all()


@pytest.mark.parametrize("q", PRIMES + EXTENSIONS)
def test_embed_int_is_ring_hom_onto_prime_subfield(q):
    spec = field(q)
    for a in range(-7, 12):
        assert spec.embed_int(a) == a % spec.p
        for b in range(-3, 7):
            assert spec.add(spec.embed_int(a), spec.embed_int(b)) == \
                spec.embed_int(a + b)
            assert spec.mul(spec.embed_int(a), spec.embed_int(b)) == \
                spec.embed_int(a * b)


@pytest.mark.parametrize("q", EXTENSIONS)
def test_generator_satisfies_modulus(q):
    spec = field(q)
    t = spec.p  # canonical index of the generator
    acc = 0
    power = 1
    # modulus stores the low coefficients of a monic degree-n polynomial
    for deg in range(spec.n):
        coeff = spec.embed_int(spec.modulus[deg])
        acc = spec.add(acc, spec.mul(coeff, power))
        power = spec.mul(power, t)
    acc = spec.add(acc, power)  # + t^n
    assert acc == 0


@pytest.mark.parametrize("q", PRIMES + EXTENSIONS)
def test_coeffs_index_round_trip(q):
    spec = field(q)
    for idx in range(spec.q):
        assert spec.index_of(spec.coeffs_of(idx)) == idx


def test_inverse_of_zero_raises():
    for q in (2, 9):
        with pytest.raises(ZeroDivisionError):
            field(q).inv(0)


def test_field_rejects_non_prime_powers():
    for q in (1, 6, 10, 12):
        with pytest.raises(ValueError):
            field(q)


def test_parse_field_round_trip():
    for q in PRIMES + EXTENSIONS:
        spec = field(q)
        assert parse_field(repr(spec)) == spec
    assert parse_field("F3") == field(3)
    assert parse_field("Fq(9;t^2+1)").q == 9
    with pytest.raises(ValueError):
        parse_field("F6")
    with pytest.raises(ValueError):
        parse_field("nonsense")


def test_custom_modulus_differs_from_builtin():
    # x^2 + x + 2 is also irreducible over F_3; same order, other repr
    spec = parse_field("Fq(9;t^2+t+2)")
    assert spec.q == 9 and spec != field(9)
    t = spec.p
    acc = spec.add(spec.mul(t, t), spec.add(t, spec.embed_int(2)))
    assert acc == 0


def test_builtin_moduli_cover_small_orders():
    assert set(BUILTIN_MODULI) == {4, 8, 9, 16, 25, 27}


@given(st.sampled_from(PRIMES + EXTENSIONS), st.data())
@settings(max_examples=60, deadline=None)
def test_element_helpers_match_tables(q, data):
    spec = field(q)
    a = data.draw(st.integers(0, spec.q - 1))
    b = data.draw(st.integers(0, spec.q - 1))
    x, y = spec.element(a), spec.element(b)
    assert ff_arith("add", x, y).index == spec.add(a, b)
    assert ff_arith("mul", x, y).index == spec.mul(a, b)
    assert ff_arith("sub", x, y).index == spec.add(a, spec.neg(b))
    if a:
        assert (ff_inv(x) * x).index == 1
    assert ff_embed_int(a - b, spec).index == spec.embed_int(a - b)


def test_element_wrapper_arithmetic():
    spec = field(9)
    x = spec.element(5)
    y = spec.element(7)
    assert (x + y).index == spec.add(5, 7)
    assert (x * y).index == spec.mul(5, 7)
    assert (-x).index == spec.neg(5)
    assert (x - x).index == 0
