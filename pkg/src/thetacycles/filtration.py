"""Membership in M_w modulo p^m, the weight filtration and the factor filtration.

Two membership routes are provided.  ``"echelon"`` reduces against an echelon
basis of M_w.  ``"xbasis"`` (the default) divides by the unit series
E_r0 E4^(3l), where w = r0 + 12l, and expands the quotient in the uniformizer
x = Delta/E4^3: the quotient comes from M_w exactly when it is a polynomial of
degree <= l in x.  The change of variables q -> x depends only on (p, m, N), so
one precomputed matrix serves every weight.

Both routes read coordinates off the first coefficients and check every
remaining coefficient up to the series precision.  A series tagged with weight
W is only accepted with precision >= dim M_W + guard, so an accepted
congruence holds exactly.
"""
from __future__ import annotations

import threading
from functools import lru_cache
from dataclasses import dataclass

import numpy as np

from .forms import (base_weight, dimension, echelon_basis, eisenstein_cached,
                    generator_qexp, _BASE_MONOMIAL)
from .series import Modulus, QSeries, convolve_mod, matvec_mod, series_invert

__all__ = [
    "InsufficientPrecision",
    "FiltrationResult",
    "WeightSpaceEngine",
    "get_engine",
    "membership",
    "weight_filtration",
    "factor_filtration",
    "weight_from_factor",
    "DEFAULT_GUARD",
]

DEFAULT_GUARD = 5


class InsufficientPrecision(ValueError):
    """The series is too short to certify a congruence at the requested weight."""


@dataclass(frozen=True)
class FiltrationResult:
    """A weight or factor filtration together with its witness.

    ``value`` is None for the zero series (filtration minus infinity).  The
    input is congruent to E_{p-1}^exponent * witness, with the witness in
    M_value.  ``p_divisible`` is v > 0 when the input was divisible by p^v and
    the filtration was computed for input / p^v modulo p^(m-v).
    """

    value: int | None
    witness: QSeries | None
    exponent: int = 0
    exact: bool = True
    p_divisible: int = 0

    @property
    def is_zero(self) -> bool:
        return self.value is None


class WeightSpaceEngine:
    """Precomputed tables for membership tests modulo p^m at precision N."""

    def __init__(self, mod: Modulus, N: int):
        self.modulus = mod
        self.N = N
        pm = mod.pm
        e4 = generator_qexp("E4", mod, N)
        delta = generator_qexp("Delta", mod, N)
        e4cube = e4 * e4 * e4
        self._inv_e4cube = series_invert(e4cube).coeffs
        x = convolve_mod(delta.coeffs, self._inv_e4cube, pm, N)
        self.coordinate_matrix = self._x_coordinates(x, pm, N)
        e6 = generator_qexp("E6", mod, N)
        self._inv_base = {}
        for r0, (a, b) in _BASE_MONOMIAL.items():
            base = QSeries.constant(1, mod, N)
            for _ in range(a):
                base = base * e4
            for _ in range(b):
                base = base * e6
            self._inv_base[r0] = series_invert(base).coeffs
        self._inv_e4cube_pows = [np.eye(1, N, dtype=np.int64)[0], self._inv_e4cube]
        self._lock = threading.Lock()

    @staticmethod
    def _x_coordinates(x: np.ndarray, pm: int, N: int) -> np.ndarray:
        # rows of X are x^j; find q = sum z_j x^j, then row n of the result is z^n,
        # so h @ result gives the x-expansion of h
        xpows = np.zeros((N, N), dtype=np.int64)
        xpows[0, 0] = 1
        for j in range(1, N):
            xpows[j] = convolve_mod(xpows[j - 1], x, pm, N)
        target = np.zeros(N, dtype=np.int64)
        if N > 1:
            target[1] = 1
        z = np.zeros(N, dtype=np.int64)
        for j in range(N):
            c = target[j] % pm
            if c:
                z[j] = c
                target = (target - c * xpows[j]) % pm
        del xpows
        ypows = np.zeros((N, N), dtype=np.int64)
        ypows[0, 0] = 1
        for n in range(1, N):
            ypows[n] = convolve_mod(ypows[n - 1], z, pm, N)
        ypows.setflags(write=False)
        return ypows

    def _inv_e4cube_pow(self, ell: int) -> np.ndarray:
        pows = self._inv_e4cube_pows
        if ell >= len(pows):
            with self._lock:
                while ell >= len(pows):
                    pows.append(convolve_mod(pows[-1], self._inv_e4cube, self.modulus.pm, self.N))
        return pows[ell]

    def x_coordinates(self, u: np.ndarray, w: int) -> np.ndarray:
        pm = self.modulus.pm
        r0, ell = base_weight(w)
        h = convolve_mod(u, self._inv_base[r0], pm, self.N)
        if ell:
            h = convolve_mod(h, self._inv_e4cube_pow(ell), pm, self.N)
        return matvec_mod(h, self.coordinate_matrix, pm)

    def contains(self, u: np.ndarray, w: int) -> bool:
        """Whether the q-expansion u (length N) agrees with a form in M_w."""
        if w < 0 or w % 2:
            return False
        dim = dimension(w)
        if dim == 0:
            return not u.any()
        c = self.x_coordinates(u, w)
        return not c[dim:].any()


@lru_cache(maxsize=16)
def _inv_ep1_powers(mod: Modulus, N: int) -> tuple[np.ndarray, ...]:
    inv = series_invert(eisenstein_cached(mod.p - 1, mod, N)).coeffs
    pows = [np.eye(1, N, dtype=np.int64)[0]]
    for _ in range(1, mod.p ** (mod.m - 1)):
        pows.append(convolve_mod(pows[-1], inv, mod.pm, N))
    return tuple(pows)


def inv_ep1_pow(mod: Modulus, N: int, t: int) -> np.ndarray:
    """E_{p-1}^(-t) to precision N, using E_{p-1}^(p^(m-1)) = 1 modulo p^m."""
    return _inv_ep1_powers(mod, N)[t % mod.p ** (mod.m - 1)]


_engines: dict = {}
_engines_lock = threading.Lock()


def get_engine(mod: Modulus, N: int) -> WeightSpaceEngine:
    key = (mod, N)
    eng = _engines.get(key)
    if eng is None:
        with _engines_lock:
            eng = _engines.get(key)
            if eng is None:
                eng = WeightSpaceEngine(mod, N)
                if len(_engines) > 8:
                    _engines.pop(next(iter(_engines)))
                _engines[key] = eng
    return eng


def _check_precision(s: QSeries, W: int, guard: int):
    need = dimension(W) + guard
    if s.precision < need:
        raise InsufficientPrecision(
            f"weight {W} needs precision >= {need} (dim {dimension(W)} + guard {guard}),"
            f" series has {s.precision}")


def _in_space(u: np.ndarray, w: int, mod: Modulus, N: int, method: str, cache=None) -> bool:
    if method == "xbasis":
        return get_engine(mod, N).contains(u, w)
    if method == "echelon":
        if w < 0 or w % 2:
            return False
        basis = echelon_basis(w, mod, N, cache=cache)
        return basis.contains(QSeries(mod, u))
    raise ValueError(f"unknown membership method {method!r}")


def membership(s: QSeries, w: int, W: int | None = None, guard: int = DEFAULT_GUARD,
               method: str = "xbasis", cache=None) -> QSeries | None:
    """A witness g in M_w with s = E_{p-1}^((W-w)/(p-1)) g, or None.

    ``W`` defaults to the weight tag of s and must be a weight whose forms
    reduce to s.  With W = w this is plain membership of s in M_w mod p^m.
    """
    mod = s.modulus
    if W is None:
        W = s.weight_tag if s.weight_tag is not None else w
    if (W - w) % (mod.p - 1):
        return None
    t = (W - w) // (mod.p - 1)
    if t < 0:
        raise ValueError("comparison weight must be at least the tested weight")
    _check_precision(s, W, guard)
    N = s.precision
    u = s.coeffs
    if t % mod.p ** (mod.m - 1):
        u = convolve_mod(u, inv_ep1_pow(mod, N, t), mod.pm, N)
    if not _in_space(u, w, mod, N, method, cache):
        return None
    return QSeries(mod, u, w)


def _modular_weight(s: QSeries) -> int:
    if s.weight_tag is None or not s.modular:
        raise ValueError("filtrations need the weight tag of a modular representative")
    return s.weight_tag


def _least_member(lo: int, hi: int, member) -> int:
    # member(j) is monotone: true at hi and false below some threshold
    while lo < hi:
        mid = (lo + hi) // 2
        if member(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def weight_filtration(s: QSeries, guard: int = DEFAULT_GUARD, method: str = "xbasis",
                      cache=None) -> FiltrationResult:
    """Least w = W mod p^(m-1)(p-1), w <= W, such that s comes from M_w."""
    W = _modular_weight(s)
    mod = s.modulus
    v = s.valuation()
    if v == mod.m:
        return FiltrationResult(None, None)
    if v:
        inner = weight_filtration(s.divide_by_p(v), guard, method, cache)
        return FiltrationResult(inner.value, inner.witness, inner.exponent, inner.exact, v)
    _check_precision(s, W, guard)
    N = s.precision
    step = mod.weight_step
    # candidates W - j*step; W - j*step is a member iff s itself lies in M_{W - j*step},
    # since E_{p-1}^(j p^(m-1)) = 1 mod p^m
    jmax = W // step

    def member(idx):  # idx counts up from the lowest candidate
        return _in_space(s.coeffs, W - (jmax - idx) * step, mod, N, method, cache)

    if not member(jmax):
        raise ValueError(f"series does not come from M_{W}: wrong weight tag")
    idx = _least_member(0, jmax, member)
    w = W - (jmax - idx) * step
    return FiltrationResult(w, QSeries(mod, s.coeffs, w), 0)


def factor_filtration(s: QSeries, guard: int = DEFAULT_GUARD, method: str = "xbasis",
                      cache=None, start: FiltrationResult | None = None) -> FiltrationResult:
    """Least k with s = E_{p-1}^n g for some n >= 0 and g in M_k.

    The search descends from the weight filtration in steps of p - 1.  A
    witness at a lower rung gives one at every higher rung (multiply back by
    E_{p-1}), so membership is monotone along the ladder and bisection finds
    the first failure.
    """
    _modular_weight(s)
    mod = s.modulus
    wf = start if start is not None else weight_filtration(s, guard, method, cache)
    if wf.is_zero:
        return wf
    if wf.p_divisible:
        inner = factor_filtration(s.divide_by_p(wf.p_divisible), guard, method, cache)
        return FiltrationResult(inner.value, inner.witness, inner.exponent, inner.exact,
                                wf.p_divisible)
    omega = wf.value
    N = s.precision
    _check_precision(s, omega, guard)
    jmax = omega // (mod.p - 1)

    def divided(j):
        if j % mod.p ** (mod.m - 1) == 0:
            return s.coeffs
        return convolve_mod(s.coeffs, inv_ep1_pow(mod, N, j), mod.pm, N)

    def member(idx):  # idx = jmax - j
        j = jmax - idx
        return _in_space(divided(j), omega - j * (mod.p - 1), mod, N, method, cache)

    idx = _least_member(0, jmax, member)
    j = jmax - idx
    value = omega - j * (mod.p - 1)
    return FiltrationResult(value, QSeries(mod, divided(j), value), j)


def weight_from_factor(factor_value: int, W: int, mod: Modulus) -> int:
    """Smallest w >= factor_value with w = W mod p^(m-1)(p-1)."""
    step = mod.weight_step
    return factor_value + (W - factor_value) % step
