from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetacycles.filtration import (InsufficientPrecision, factor_filtration, membership,
                                    weight_filtration, weight_from_factor)
from thetacycles.forms import dimension, echelon_basis, eisenstein_qexp, eval_form_expr, FormExpr
from thetacycles.series import Modulus, QSeries, series_pow
from thetacycles.cycle import _theta_power


def delta(p, m, N):
    return eval_form_expr(FormExpr.parse("Delta"), Modulus(p, m), N)


def brute_member(s: QSeries, w: int) -> bool:
    B = echelon_basis(w, s.modulus, s.precision)
    for c in itertools.product(range(s.modulus.pm), repeat=B.dim):
        if B.combination(c).agrees_with(s):
            return True
    return B.dim == 0 and s.is_zero()


def test_delta_examples():
    assert weight_filtration(delta(17, 1, 40)).value == 12
    assert weight_filtration(delta(17, 1, 40).theta().with_weight(30)).value == 30
    s = delta(17, 2, 60).theta().with_weight(12 + 2 + 2 * 17 * 16)
    wf = weight_filtration(s)
    assert wf.value == 558
    assert factor_filtration(s, start=wf).value == 318


def test_theta17_delta_factor_filtration():
    mod = Modulus(17, 2)
    N = dimension(12 + 17 * 546) + 5
    s = _theta_power(delta(17, 2, N), 17).with_weight(12 + 17 * 546)
    assert factor_filtration(s).value == 318
    assert weight_filtration(s).value == 318


def test_delta_not_in_weight_10_mod_289():
    s = delta(17, 2, 12).with_weight(12)
    assert membership(s, 10, W=10) is None
    assert not brute_member(delta(5, 1, 12), 10)


def test_ep1_reduces_to_constant():
    mod = Modulus(7, 1)
    e = eisenstein_qexp(6, mod, 30)
    w = membership(e.with_weight(6), 0)
    assert w is not None and w.agrees_with(QSeries.constant(1, mod, 30))
    for t in (1, 2, 5):
        s = series_pow(e.with_weight(6), t)
        assert factor_filtration(s).value == 0
        assert weight_filtration(s).value == 0


def test_weight_from_factor_examples():
    mod = Modulus(17, 2)
    assert weight_from_factor(318, 46, mod) == 318
    assert weight_from_factor(318, 14, mod) == 558


def test_zero_and_p_divisible():
    mod = Modulus(5, 2)
    z = QSeries(mod, np.zeros(20, dtype=np.int64), 12)
    assert weight_filtration(z).is_zero
    assert factor_filtration(z).value is None
    s = delta(13, 2, 30).with_weight(12).scale(13)
    wf = weight_filtration(s)
    assert (wf.value, wf.p_divisible) == (12, 1)


def test_precision_guard_and_wrong_tag():
    with pytest.raises(InsufficientPrecision):
        weight_filtration(delta(17, 2, 20).with_weight(400))
    with pytest.raises(ValueError, match="wrong weight tag"):
        weight_filtration(delta(17, 1, 20).with_weight(4))
    with pytest.raises(ValueError):
        weight_filtration(eisenstein_qexp(2, Modulus(7, 1), 20))


# ------------------------------------------------------------- properties

def random_form(data, mod, N, max_weight=40):
    """Random element of M_w times a random power of E_{p-1}, tagged with its weight."""
    p = mod.p
    w = data.draw(st.sampled_from([k for k in range(4, max_weight + 1, 2) if dimension(k)]))
    B = echelon_basis(w, mod, N)
    coords = data.draw(st.lists(st.integers(0, mod.pm - 1), min_size=B.dim, max_size=B.dim))
    if all(c % p == 0 for c in coords):
        coords[0] += 1
    g = B.combination(coords)
    j = data.draw(st.integers(0, 3))
    if j:
        g = g * series_pow(eisenstein_qexp(p - 1, mod, N).with_weight(p - 1), j)
    return g


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.sampled_from([1, 2]), st.data())
def test_methods_agree(p, m, data):
    mod = Modulus(p, m)
    s = random_form(data, mod, 60)
    assert weight_filtration(s, method="xbasis").value == weight_filtration(s, method="echelon").value
    assert factor_filtration(s).value == factor_filtration(s, method="echelon").value


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.data())
def test_factor_filtration_equals_weight_filtration_mod_p(p, data):
    s = random_form(data, Modulus(p, 1), 60)
    assert factor_filtration(s).value == weight_filtration(s).value


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.sampled_from([1, 2]), st.data())
def test_weight_is_least_lift_of_factor(p, m, data):
    mod = Modulus(p, m)
    s = random_form(data, mod, 60)
    wf = weight_filtration(s)
    ff = factor_filtration(s, start=wf)
    if wf.p_divisible:
        return
    assert ff.value <= wf.value
    assert weight_from_factor(ff.value, s.weight_tag, mod) == wf.value


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11]), st.sampled_from([1, 2]), st.data())
def test_ultrametric(p, m, data):
    mod = Modulus(p, m)
    f = random_form(data, mod, 80)
    g = random_form(data, mod, 80)
    # bring both to a common weight using E_{p-1}^(p^(m-1)) = 1
    step = mod.weight_step
    W = max(f.weight_tag, g.weight_tag)
    W += (f.weight_tag - W) % step
    if (g.weight_tag - W) % step:
        return
    s = (f + g).with_weight(W)
    if s.valuation():
        return
    wf, wg = weight_filtration(f).value, weight_filtration(g).value
    assert weight_filtration(s).value <= max(wf, wg)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.data())
def test_power_law_mod_p(p, data):
    # products can drop (E4 E6 = E10 = 1 mod 11) but powers cannot
    mod = Modulus(p, 1)
    f = random_form(data, mod, 80, 24)
    g = random_form(data, mod, 80, 24)
    assert weight_filtration(f * g).value <= weight_filtration(f).value + weight_filtration(g).value
    e = data.draw(st.integers(1, 3))
    assert weight_filtration(series_pow(f, e)).value == e * weight_filtration(f).value


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([5, 7, 11, 13]), st.data())
def test_theta_raises_filtration_by_p_plus_one_unless_p_divides(p, data):
    mod = Modulus(p, 1)
    f = random_form(data, mod, 80, 30)
    w = weight_filtration(f).value
    t = f.theta()
    if t.is_zero():
        return
    wt = weight_filtration(t.with_weight(w + p + 1)).value
    if w % p:
        assert wt == w + p + 1
    else:
        assert wt <= w + p + 1


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([5, 7]), st.data())
def test_subadditive_mod_p2(p, data):
    mod = Modulus(p, 2)
    f = random_form(data, mod, 80, 24)
    g = random_form(data, mod, 80, 24)
    assert weight_filtration(f * g).value <= weight_filtration(f).value + weight_filtration(g).value
