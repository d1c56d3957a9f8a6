from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetacycles.cycle import (CycleReport, FiltrationRecord, HypothesisError, classify_points,
                               compute_cycle, exceptional_indices, extended_length, is_exceptional,
                               is_ordinary, theorem_row, theorem_status, theta_step)
from thetacycles.series import Modulus, is_prime


def test_mod_p_cycle_of_delta_at_17():
    rep = compute_cycle("Delta", 17, 1)
    w = rep.weights()
    assert w[:7] == [12, 30, 48, 66, 84, 102, 24]
    assert len(rep.records) == extended_length(Modulus(17, 1)) + 1 == 17
    assert rep.ordinary is True


def test_first_interval_mod_p2_at_17():
    rep = compute_cycle("Delta", 17, 2, i_max=18)
    w = rep.weights()
    assert (w[0], w[1], w[6], w[10], w[17]) == (12, 558, 296, 576, 318)
    assert rep.factors()[1] == 318
    assert [i for i in range(1, 18) if rep[i].classification == "low"] == [6, 17]


def test_intro_falls_at_13():
    rep = compute_cycle("Delta", 13, 2, i_max=140)
    assert rep.weights()[133:136] == [434, 280, 126]
    assert [rep[i].classification for i in (133, 134, 135)] == ["fall", "fall", "low"]


def test_methods_give_identical_reports():
    a = compute_cycle("E4", 7, 2)
    b = compute_cycle("E4", 7, 2, method="echelon")
    assert a.records == b.records


def test_hypothesis_failures():
    with pytest.raises(HypothesisError, match="omega_5"):
        compute_cycle("E4", 5, 2)
    with pytest.raises(HypothesisError, match="0 < k < p"):
        compute_cycle("Delta", 11, 2)
    rep = compute_cycle("Delta", 11, 2, i_max=5, theorem_mode=False)
    assert {r.status for r in rep.records} == {"engine-computed"}


def test_explicit_precision_too_small():
    with pytest.raises(ValueError, match="too small"):
        compute_cycle("Delta", 13, 2, i_max=10, precision=30)


def test_theta_step_and_length():
    assert theta_step(Modulus(13, 1)) == 14
    assert theta_step(Modulus(13, 2)) == 2 + 2 * 13 * 12
    assert extended_length(Modulus(13, 2)) == 12 * 13 + 1
    with pytest.raises(ValueError):
        theta_step(Modulus(5, 3))


def test_exceptional_examples():
    # 20^2 + 11*20 - 1 = 619 = 7 mod 17
    assert not is_exceptional(17, 12, 20)
    assert exceptional_indices(17, 12) == [53, 55, 88, 207, 240, 242]


def scan(p, k):
    out = []
    for n in range(1, p):
        for ip in range(0, p - k + 2):
            i = n * p + ip
            if (i * i + (k - 1) * i - n * n) % p == 0:
                out.append(i)
    return out


PK = [(p, k) for p in range(5, 60) if is_prime(p) for k in range(2, p, 2)]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PK))
def test_exceptional_scan_and_structure(pk):
    p, k = pk
    exc = exceptional_indices(p, k)
    assert exc == scan(p, k)
    for i in exc:
        n, ip = divmod(i, p)
        assert ip != n and ip != p - k + 1 - n
        if n <= ip <= p - k + 1 - n:
            assert not (n <= ip + 1 <= p - k + 1 - n and is_exceptional(p, k, i + 1))


def test_theorem_rows():
    assert theorem_row(17, 12, 18) == "C.3"
    assert theorem_row(17, 12, 5 * 17 + 1) == "C.2"
    assert theorem_row(17, 12, 17 * 3) == "C.1"
    assert theorem_row(17, 12, 17 * 3 + 6) == "C.5"
    assert theorem_row(17, 12, 53) == "C.exceptional"
    assert theorem_row(17, 12, 17 * 3 + 8) is None
    assert theorem_row(17, 12, 4) == "A"
    assert theorem_status(17, 12, 0) == "exact"
    assert theorem_status(17, 12, 60) == "engine-computed"
    # i = 16*17 + 3 only has a bound row, but it repeats the exact value at i = 3
    assert theorem_row(17, 12, 3 + 17 * 16) == "C.4"
    assert theorem_status(17, 12, 3 + 17 * 16) == "exact"


def test_ordinarity():
    assert is_ordinary("Delta", 5) is False
    assert is_ordinary("Delta", 17) is True
    assert is_ordinary("E4*Delta", 59) is False
    assert is_ordinary("E6", 11) is True


def _rec(i, w):
    return FiltrationRecord(i, 0, i, w, w, "engine-computed")


def test_classification_with_zero_series():
    rep = CycleReport(Modulus(5, 1), 4, "x", 4, [_rec(0, 10), _rec(1, None), _rec(2, 8),
                                                 _rec(3, 8), _rec(4, 2)], None)
    labels = [r.classification for r in classify_points(rep).records]
    assert labels == ["boundary", "low", "plateau", "fall", "boundary"]


def test_coverage_counts_full_period():
    rep = compute_cycle("Delta", 17, 2)
    cov = rep.coverage
    assert cov["positions"] == 17 * 16 + 2
    exact = sum(1 for i in range(cov["positions"]) if theorem_status(17, 12, i) == "exact")
    assert cov["exact"] == exact
    assert cov["exact"] >= 17 + (17 - 12 - 4) * (17 - 12 + 1) // 2
    assert cov["bounded"] >= 17 + (17 - 12 + 1) * 16
