from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetacycles.series import (Modulus, QSeries, convolve_mod, is_prime, p_valuation,
                                series_invert, series_pow)
from thetacycles.forms import eisenstein_qexp

from oracles import poly_mul

PRIMES = [5, 7, 11, 13, 17]


def series_strategy(p, m, n=12):
    pm = p ** m
    return st.lists(st.integers(0, pm - 1), min_size=n, max_size=n).map(
        lambda c: QSeries(Modulus(p, m), c))


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("p,m,msg", [(9, 1, "not prime"), (3, 1, "at least 5"), (5, 0, "positive")])
def test_modulus_validation(p, m, msg):
    with pytest.raises(ValueError, match=msg):
        Modulus(p, m)


def test_modulus_residue_of_fraction():
    mod = Modulus(7, 2)
    assert mod.residue(Fraction(1, 2)) * 2 % 49 == 1
    with pytest.raises(ValueError):
        mod.residue(Fraction(1, 7))


def test_e4_squared_matches_integer_expansion():
    mod = Modulus(7, 2)
    e4 = QSeries(mod, [1, 240, 2160])
    assert list((e4 * e4).coeffs) == [1, 480 % 49, 61920 % 49]


def test_product_against_schoolbook():
    rng = np.random.default_rng(3)
    a = [int(x) for x in rng.integers(-1000, 1000, 40)]
    b = [int(x) for x in rng.integers(-1000, 1000, 40)]
    mod = Modulus(13, 2)
    want = [c % 169 for c in poly_mul(a, b, 40)]
    assert list((QSeries(mod, a) * QSeries(mod, b)).coeffs) == want


def test_convolution_overflow_fallback():
    # p^m close to the int64 limit forces the split-operand path
    mod = Modulus(1009, 3)
    rng = np.random.default_rng(0)
    a = rng.integers(0, mod.pm, 300)
    b = rng.integers(0, mod.pm, 300)
    got = convolve_mod(a, b, mod.pm, 300)
    want = [sum(int(a[i]) * int(b[n - i]) for i in range(n + 1)) % mod.pm for n in range(300)]
    assert list(got) == want


def test_invert_times_series_is_one():
    mod = Modulus(7, 2)
    e6 = eisenstein_qexp(6, mod, 50)
    one = e6 * series_invert(e6)
    assert one.agrees_with(QSeries.constant(1, mod, 50))


def test_invert_rejects_non_unit():
    mod = Modulus(5, 2)
    with pytest.raises(ValueError, match="non-invertible"):
        series_invert(QSeries(mod, [5, 1, 2]))


def test_ep1_power_congruences():
    mod = Modulus(5, 2)
    e4 = eisenstein_qexp(4, mod, 80)
    assert e4.reduce(1).agrees_with(QSeries.constant(1, Modulus(5, 1), 80))
    assert series_pow(e4, 5).agrees_with(QSeries.constant(1, mod, 80))
    assert not series_pow(e4, 1).agrees_with(QSeries.constant(1, mod, 80))


def test_theta_multiplies_index():
    mod = Modulus(17, 1)
    s = QSeries(mod, [3, 1, -24, 252])
    assert list(s.theta().coeffs) == [0, 1, (-48) % 17, 756 % 17]


def test_valuation_and_division():
    mod = Modulus(5, 2)
    s = QSeries(mod, [5, 10, 0, 15])
    assert p_valuation(s) == 1
    assert list(s.divide_by_p().coeffs) == [1, 2, 0, 3]
    assert s.divide_by_p().modulus == Modulus(5, 1)
    assert p_valuation(QSeries(mod, [0, 0])) == 2
    with pytest.raises(ValueError):
        QSeries(mod, [1, 5]).divide_by_p()


def test_immutable_and_empty():
    mod = Modulus(5, 1)
    s = QSeries(mod, [1, 2])
    with pytest.raises(AttributeError):
        s.coeffs = None
    with pytest.raises(ValueError):
        s.coeffs[0] = 3
    with pytest.raises(ValueError):
        QSeries(mod, [])


def test_truncation_never_extends():
    s = QSeries(Modulus(5, 1), [1, 2, 3])
    assert s.truncate(2).precision == 2
    with pytest.raises(ValueError):
        s.truncate(4)


def test_weight_tags_add_under_products():
    mod = Modulus(7, 1)
    a = QSeries(mod, [1, 2, 3], 4)
    b = QSeries(mod, [1, 0, 1], 6)
    assert (a * b).weight_tag == 10
    assert (a + b).weight_tag is None
    assert (a + a).weight_tag == 4
    assert series_pow(a, 3).weight_tag == 12


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_ring_laws(p, data):
    a, b, c = (data.draw(series_strategy(p, 2)) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == QSeries(a.modulus, np.zeros(12, dtype=np.int64))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_reduction_is_a_ring_map(p, data):
    a, b = (data.draw(series_strategy(p, 2)) for _ in range(2))
    assert (a * b).reduce(1) == a.reduce(1) * b.reduce(1)
    assert (a + b).reduce(1) == a.reduce(1) + b.reduce(1)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_theta_is_a_derivation(p, data):
    a, b = (data.draw(series_strategy(p, 2)) for _ in range(2))
    assert (a * b).theta() == a.theta() * b + a * b.theta()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_inverse_of_units(p, data):
    a = data.draw(series_strategy(p, 2))
    coeffs = a.coeffs.copy()
    if coeffs[0] % p == 0:
        coeffs[0] += 1
    u = QSeries(a.modulus, coeffs)
    assert u * u.inverse() == QSeries.constant(1, u.modulus, 12)
