"""Residue arithmetic modulo p^m and truncated q-expansions over it.

Coefficients live in int64 numpy arrays holding least nonnegative residues.
Products are accumulated in int64 and reduced afterwards; when a product sum
could overflow, one operand is split into two half-width digits first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

__all__ = [
    "Modulus",
    "QSeries",
    "series_mul",
    "series_pow",
    "series_invert",
    "theta_apply",
    "p_valuation",
    "is_prime",
]

_INT64_LIMIT = 2**63 - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """The prime power p^m governing all residue arithmetic."""

    p: int
    m: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(int(self.p)):
            raise ValueError(f"{self.p} is not prime")
        if self.p < 5:
            raise ValueError(f"p must be at least 5, got {self.p}")
        if self.m < 1:
            raise ValueError(f"exponent m must be positive, got {self.m}")
        if (self.p ** self.m) ** 2 > _INT64_LIMIT:
            raise ValueError(f"p^(2m) = {self.p}^{2 * self.m} does not fit in int64")

    @property
    def pm(self) -> int:
        return self.p ** self.m

    @property
    def weight_step(self) -> int:
        """p^(m-1)(p-1): weights of congruent forms agree modulo this."""
        return self.p ** (self.m - 1) * (self.p - 1)

    def lower(self, m: int) -> "Modulus":
        return Modulus(self.p, m)

    def residue(self, x) -> int:
        """Reduce an integer or p-integral rational to [0, p^m)."""
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ValueError(f"{x} is not {self.p}-integral")
            return x.numerator * pow(x.denominator, -1, self.pm) % self.pm
        return int(x) % self.pm

    def inverse(self, x) -> int:
        r = self.residue(x)
        if r % self.p == 0:
            raise ValueError(f"{x} is not a unit modulo {self.p}")
        return pow(r, -1, self.pm)

    def __str__(self):
        return f"{self.p}^{self.m}"


def _split(a: np.ndarray, pm: int):
    shift = (int(pm - 1).bit_length() + 1) // 2
    return a >> shift, a & ((1 << shift) - 1), 1 << shift


def convolve_mod(a: np.ndarray, b: np.ndarray, pm: int, n: int) -> np.ndarray:
    """First n coefficients of the product of a and b, reduced mod pm."""
    a = a[:n]
    b = b[:n]
    terms = min(len(a), len(b))
    if (pm - 1) ** 2 * terms <= _INT64_LIMIT:
        return np.convolve(a, b)[:n] % pm
    hi, lo, base = _split(b, pm)
    if (pm - 1) * (base - 1) * terms > _INT64_LIMIT:
        raise OverflowError("series too long for int64 accumulation")
    top = np.convolve(a, hi)[:n] % pm
    bottom = np.convolve(a, lo)[:n] % pm
    return (top * base % pm + bottom) % pm


def matvec_mod(v: np.ndarray, mat: np.ndarray, pm: int) -> np.ndarray:
    """Row vector times matrix, reduced mod pm."""
    terms = len(v)
    if (pm - 1) ** 2 * max(terms, 1) <= _INT64_LIMIT:
        return (v @ mat) % pm
    hi, lo, base = _split(v, pm)
    if (pm - 1) * (base - 1) * terms > _INT64_LIMIT:
        raise OverflowError("matrix too large for int64 accumulation")
    return ((hi @ mat) % pm * base % pm + (lo @ mat) % pm) % pm


class QSeries:
    """A truncated q-expansion with coefficients in Z/p^mZ.

    ``coeffs[n]`` is the coefficient of q^n for n < precision.  ``weight_tag``
    records the weight of a known holomorphic (or, with ``modular=False``,
    quasi-modular) form reducing to this series.  Instances are immutable.
    """

    __slots__ = ("modulus", "coeffs", "weight_tag", "modular")

    def __init__(self, modulus: Modulus, coeffs: Iterable[int] | np.ndarray,
                 weight_tag: int | None = None, modular: bool = True):
        arr = np.asarray(coeffs)
        if arr.dtype == object or arr.dtype.kind not in "iu":
            arr = np.array([modulus.residue(c) for c in arr.ravel()], dtype=np.int64)
        else:
            arr = np.mod(arr.astype(np.int64), modulus.pm)
        if arr.ndim != 1 or len(arr) == 0:
            raise ValueError("a q-series needs at least one coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "weight_tag", None if weight_tag is None else int(weight_tag))
        object.__setattr__(self, "modular", bool(modular) if weight_tag is not None else True)

    def __setattr__(self, name, value):
        raise AttributeError("QSeries is immutable")

    # construction helpers

    @classmethod
    def constant(cls, c, modulus: Modulus, precision: int, weight_tag: int | None = 0):
        arr = np.zeros(precision, dtype=np.int64)
        arr[0] = modulus.residue(c)
        return cls(modulus, arr, weight_tag)

    @classmethod
    def monomial(cls, n: int, modulus: Modulus, precision: int, c=1):
        arr = np.zeros(precision, dtype=np.int64)
        if n < precision:
            arr[n] = modulus.residue(c)
        return cls(modulus, arr)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def p(self) -> int:
        return self.modulus.p

    def with_weight(self, weight: int | None, modular: bool = True) -> "QSeries":
        return QSeries(self.modulus, self.coeffs, weight, modular)

    def truncate(self, n: int) -> "QSeries":
        if n > self.precision:
            raise ValueError(f"cannot extend precision {self.precision} to {n}")
        return QSeries(self.modulus, self.coeffs[:n], self.weight_tag, self.modular)

    def reduce(self, m: int) -> "QSeries":
        """Reduction to Z/p^mZ for m not exceeding the current exponent."""
        if m > self.modulus.m:
            raise ValueError("cannot lift a series to a higher power of p")
        low = self.modulus.lower(m)
        return QSeries(low, self.coeffs % low.pm, self.weight_tag, self.modular)

    def divide_by_p(self, times: int = 1) -> "QSeries":
        """Exact division of a p^times-divisible series, landing in Z/p^(m-times)Z."""
        pt = self.p ** times
        if np.any(self.coeffs % pt):
            raise ValueError(f"series is not divisible by {self.p}^{times}")
        low = self.modulus.lower(self.modulus.m - times)
        return QSeries(low, self.coeffs // pt, self.weight_tag, self.modular)

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def digest(self) -> str:
        import hashlib

        h = hashlib.sha256()
        h.update(f"{self.modulus.p}:{self.modulus.m}:".encode())
        h.update(self.coeffs.tobytes())
        return h.hexdigest()[:16]

    def __getitem__(self, n):
        if isinstance(n, slice):
            return self.coeffs[n]
        return int(self.coeffs[n])

    def __len__(self):
        return self.precision

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.precision > 6 else ""
        tag = "" if self.weight_tag is None else f", weight={self.weight_tag}"
        return f"QSeries(mod {self.modulus}, [{head}{more}], N={self.precision}{tag})"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.modulus == other.modulus and self.precision == other.precision
                and bool(np.array_equal(self.coeffs, other.coeffs)))

    def __hash__(self):
        return hash((self.modulus, self.coeffs.tobytes()))

    def agrees_with(self, other: "QSeries", precision: int | None = None) -> bool:
        """Coefficientwise equality up to the shared (or given) precision."""
        _check_moduli(self, other)
        n = min(self.precision, other.precision)
        if precision is not None:
            if precision > n:
                raise ValueError("requested comparison precision exceeds available data")
            n = precision
        return bool(np.array_equal(self.coeffs[:n], other.coeffs[:n]))

    # arithmetic

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            _check_moduli(self, other)
            return other
        return QSeries.constant(other, self.modulus, self.precision, weight_tag=None)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return QSeries(self.modulus, self.coeffs[:n] + other.coeffs[:n],
                       *_common_tag(self, other))

    __radd__ = __add__

    def __neg__(self):
        return QSeries(self.modulus, -self.coeffs, self.weight_tag, self.modular)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "QSeries":
        """Multiply by an integer or p-integral rational; the weight is kept."""
        r = self.modulus.residue(c)
        pm = self.modulus.pm
        return QSeries(self.modulus, self.coeffs * r % pm, self.weight_tag, self.modular)

    def __mul__(self, other):
        if isinstance(other, (int, np.integer, Fraction)):
            return self.scale(other)
        if isinstance(other, QSeries):
            return series_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        return series_pow(self, e)

    def theta(self) -> "QSeries":
        return theta_apply(self)

    def inverse(self) -> "QSeries":
        return series_invert(self)

    def valuation(self) -> int:
        return p_valuation(self)


def _check_moduli(a: QSeries, b: QSeries):
    if a.modulus != b.modulus:
        raise ValueError(f"mismatched moduli {a.modulus} and {b.modulus}")


def _common_tag(a: QSeries, b: QSeries):
    if a.weight_tag is not None and a.weight_tag == b.weight_tag:
        return a.weight_tag, a.modular and b.modular
    return None, True


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product truncated to the shorter precision."""
    _check_moduli(a, b)
    n = min(a.precision, b.precision)
    coeffs = convolve_mod(a.coeffs, b.coeffs, a.modulus.pm, n)
    if a.weight_tag is not None and b.weight_tag is not None:
        return QSeries(a.modulus, coeffs, a.weight_tag + b.weight_tag, a.modular and b.modular)
    return QSeries(a.modulus, coeffs)


def series_pow(a: QSeries, e: int) -> QSeries:
    if e < 0:
        raise ValueError("negative exponent; use series_invert")
    result = QSeries.constant(1, a.modulus, a.precision, weight_tag=0)
    base = a
    while e:
        if e & 1:
            result = series_mul(result, base)
        e >>= 1
        if e:
            base = series_mul(base, base)
    if a.weight_tag is None:
        return result.with_weight(None)
    return result


def series_invert(a: QSeries) -> QSeries:
    """Multiplicative inverse of a series with unit constant term."""
    pm = a.modulus.pm
    a0 = int(a.coeffs[0])
    if a0 % a.modulus.p == 0:
        raise ValueError("non-invertible series: constant term is divisible by p")
    n = a.precision
    inv0 = pow(a0, -1, pm)
    # Newton iteration b <- b(2 - ab) doubles the correct precision each step.
    b = np.array([inv0], dtype=np.int64)
    k = 1
    while k < n:
        k = min(2 * k, n)
        ab = convolve_mod(a.coeffs, b, pm, k)
        corr = (-ab) % pm
        corr[0] = (corr[0] + 2) % pm
        b = convolve_mod(b, corr, pm, k)
    return QSeries(a.modulus, b)


def theta_apply(f: QSeries) -> QSeries:
    """q d/dq: the coefficient of q^n is multiplied by n."""
    pm = f.modulus.pm
    n = np.arange(f.precision, dtype=np.int64) % pm
    return QSeries(f.modulus, f.coeffs * n % pm)


def p_valuation(f: QSeries) -> int:
    """Largest v <= m with p^v dividing every stored coefficient."""
    p, m = f.modulus.p, f.modulus.m
    v = 0
    pv = 1
    while v < m and not np.any(f.coeffs % (pv * p)):
        v += 1
        pv *= p
    return v
