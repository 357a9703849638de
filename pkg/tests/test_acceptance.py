"""Acceptance gate: every verification check at full contract scale.

One test per criterion, in order.  Each runs the corresponding named
check with default (full-scale) parameters exactly as `fqwords verify`
would, prints its one-line summary, pins the scale parameters so a
shrunk default cannot silently weaken the gate, and asserts a clean
pass — plus a wall-clock cap where one is part of the contract.

Criterion 11 asserts that measured expansion lengths match their
closed-form growth predictions; the sigma-side prediction is wrong for
every n >= 3 (lengths follow 2*3^n - 2^n, not 3^n + 5*2^(n-2)), so the
check reports the first mismatch and this test fails.  The discrepancy
is real, reproducible from the morphism alone, and intentionally left
visible.
"""

import time

import pytest

from fqwords.checks import CHECKS, SuiteParams

_CACHE = {}


def _run(name):
    if name not in _CACHE:
        t0 = time.perf_counter()
        res = CHECKS[name](SuiteParams())
        _CACHE[name] = (res, time.perf_counter() - t0)
    res, dt = _CACHE[name]
    print(f"{dt:7.2f}s {res.summary()}")
    return res, dt


def _assert_pass(res, scale):
    got = dict(res.params)
    for key, want in scale.items():
        assert got.get(key) == want, (key, got)
    assert res.status == "pass", res.summary()


def test_criterion_01_three_generator_agreement():
    res, dt = _run("carlitz-q2-generators")
    _assert_pass(res, {"N": "1048576"})
    assert dt < 30.0, f"{dt:.1f}s exceeds 30s cap"


def test_criterion_02_binary_envelope_and_prefix_exactness():
    res, dt = _run("carlitz-q2-bounds")
    _assert_pass(res, {"N": "524305", "M": "18"})
    assert dt < 60.0, f"{dt:.1f}s exceeds 60s cap"


def test_criterion_03_linear_envelope_all_orders():
    res, _ = _run("carlitz-q3-bounds")
    _assert_pass(res, {"qs": "3,4,5,9"})


def test_criterion_04_unit_convolution():
    res, _ = _run("unit-convolution")
    _assert_pass(res, {"N": "100000", "qs": "2,3,4,5"})


def test_criterion_05_sturmian_saturation():
    res, _ = _run("sturmian-saturation")
    _assert_pass(res, {"N": "1000000", "M": "100"})


def test_criterion_06_saturated_sum():
    res, _ = _run("saturation-sum")
    _assert_pass(res, {"N": "10000000", "M": "8"})


def test_criterion_07_closure_sandwiches():
    res, _ = _run("closure-sandwiches")
    _assert_pass(res, {"N": "100000", "M": "50", "pairs": "10"})


def test_criterion_08_operator_bounds():
    res, _ = _run("operator-bounds")
    _assert_pass(res, {"N": "100000", "M": "50"})


def test_criterion_09_algebraic_identities():
    res, _ = _run("algebraic-identities")
    _assert_pass(res, {"N": "10000", "leibniz_N": "1000"})


def test_criterion_10_lacunary_structure():
    res_b, dt_b = _run("lacunary-b-bound")
    res_c, dt_c = _run("lacunary-collisions")
    res_p, dt_p = _run("lacunary-product")
    _assert_pass(res_b, {"N": "1000000", "M": "200"})
    _assert_pass(res_c, {"N": "1000000", "d": "2", "e": "3"})
    _assert_pass(res_p, {"horizon": "10000", "N": "1000000", "M": "64"})
    total = dt_b + dt_c + dt_p
    assert total < 300.0, f"{total:.1f}s exceeds 300s cap"


def test_criterion_11_morphic_growth_orders():
    res, _ = _run("growth-orders")
    _assert_pass(res, {"n": "2..20"})


def test_criterion_12_two_square_counts():
    res, _ = _run("r2-identities")
    _assert_pass(res, {"N": "100000", "prime_N": "10000", "horizon": "10000"})


def test_criterion_13_engine_equivalence():
    res, _ = _run("engine-equivalence")
    _assert_pass(res, {"N": "10000", "trials": "200", "seed": "20240801"})
