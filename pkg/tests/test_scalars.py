import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nildga.scalars import (
    ApproxComplex,
    GaussianRational,
    I,
    ONE,
    ZERO,
    abs2,
    approx_eq,
    conj,
    format_scalar,
    gq,
    parse_scalar,
    pythagorean_unit,
    rationalize,
    to_approx,
)


small = st.fractions(min_value=-9, max_value=9, max_denominator=12)
gaussians = st.builds(gq, small, small)


def _random_gaussian(rng):
    return gq(Fraction(rng.randint(-9, 9), rng.randint(1, 7)),
              Fraction(rng.randint(-9, 9), rng.randint(1, 7)))


def test_field_axioms_bulk():
    # 1200 random triples, every ring/field identity exact
    rng = random.Random(0)
    for _ in range(1200):
        x, y, z = (_random_gaussian(rng) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + y == y + x and x * y == y * x
        assert conj(x * y) == conj(x) * conj(y)
        assert abs2(x * y) == abs2(x) * abs2(y)
        if x != ZERO:
            assert x * x.inverse() == ONE


@given(gaussians)
def test_inverse_roundtrip(x):
    if x == ZERO:
        with pytest.raises(ZeroDivisionError):
            x.inverse()
    else:
        assert x * x.inverse() == ONE
        assert (ONE / x) * x == ONE


@given(gaussians, gaussians)
def test_sub_div_consistency(x, y):
    assert (x - y) + y == x
    if y != ZERO:
        assert (x / y) * y == x


def test_conj_examples():
    assert conj(gq(1, 2)) == gq(1, -2)
    assert conj(ZERO) == ZERO
    z, w = gq(1, 1), gq(2, -3)
    assert z * w == gq(5, -1)
    assert conj(z * w) == conj(z) * conj(w) == gq(5, 1)


def test_abs2_examples():
    assert abs2(gq(3, 4)) == 25
    assert abs2(ZERO) == 0
    assert abs2(gq(Fraction(1, 2), Fraction(1, 2))) == Fraction(1, 2)


def test_powers_and_units():
    assert I * I == gq(-1)
    assert I ** 4 == ONE
    assert gq(2) ** -2 == gq(Fraction(1, 4))
    assert gq(1, 1) ** 2 == gq(0, 2)


def test_is_real():
    assert gq(5).is_real
    assert not I.is_real


def test_pythagorean_unit_modulus_one():
    rng = random.Random(1)
    for _ in range(300):
        p, q = rng.randint(-20, 20), rng.randint(-20, 20)
        if p == 0 and q == 0:
            continue
        u = pythagorean_unit(p, q)
        assert abs2(u) == 1
    assert pythagorean_unit(1, 0) == ONE
    with pytest.raises(ValueError):
        pythagorean_unit(0, 0)


def test_parse_format_roundtrip():
    rng = random.Random(2)
    for _ in range(200):
        z = _random_gaussian(rng)
        assert parse_scalar(format_scalar(z)) == z
    assert parse_scalar("1/2+3i") == gq(Fraction(1, 2), 3)
    assert parse_scalar("-i") == gq(0, -1)
    assert parse_scalar("0") == ZERO
    with pytest.raises(ValueError):
        parse_scalar("one plus i")


def test_approx_eq_examples():
    t = 1e-9
    assert approx_eq(ApproxComplex(1.0, 0.0, t), ApproxComplex(1.0 + 1e-12, 0.0, t))
    assert not approx_eq(ApproxComplex(1.0, 0.0, t), ApproxComplex(1.1, 0.0, t))
    assert approx_eq(ApproxComplex(0.0, 0.0, t), ApproxComplex(0.0, 1e-10, t))


def test_approx_eq_reflexive_symmetric():
    rng = random.Random(3)
    for _ in range(100):
        x = ApproxComplex(rng.uniform(-5, 5), rng.uniform(-5, 5), 1e-9)
        y = ApproxComplex(rng.uniform(-5, 5), rng.uniform(-5, 5), 1e-9)
        assert approx_eq(x, x)
        assert approx_eq(x, y) == approx_eq(y, x)


def test_rationalize_recovers_small_fractions():
    rng = random.Random(4)
    for _ in range(100):
        z = gq(Fraction(rng.randint(-30, 30), rng.randint(1, 32)),
               Fraction(rng.randint(-30, 30), rng.randint(1, 32)))
        assert rationalize(to_approx(z)) == z
