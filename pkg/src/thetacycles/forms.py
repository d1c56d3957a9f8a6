"""Classical modular forms on SL2(Z) as q-expansions modulo p^m.

Eisenstein series, the generators E4, E6 and Delta, echelon bases of M_k,
forms given as polynomials in the generators, Serre derivatives, the
expansion of theta^i f in powers of E2, and the modular representative of
E2 modulo p^2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .series import Modulus, QSeries, convolve_mod, matvec_mod, series_pow

__all__ = [
    "bernoulli",
    "eisenstein_qexp",
    "generator_qexp",
    "delta_qexp",
    "dimension",
    "EchelonBasis",
    "echelon_basis",
    "FormExpr",
    "eval_form_expr",
    "serre_derivative",
    "modified_serre_derivatives",
    "modified_serre_power",
    "theta_power_expansion",
    "e2_representative_mod_p2",
    "factorial_ratio",
]


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1, with B_1 = -1/2
    table = [Fraction(1)]
    for k in range(1, n + 1):
        s = sum(comb(k + 1, j) * table[j] for j in range(k))
        table.append(-s / (k + 1))
    return tuple(table)


def bernoulli(k: int) -> Fraction:
    """Exact Bernoulli number B_k for even k >= 2."""
    if k <= 0 or k % 2:
        raise ValueError(f"bernoulli expects an even positive index, got {k}")
    return _bernoulli_table(k)[k]


def _sigma_mod(k: int, pm: int, n: int) -> np.ndarray:
    sig = np.zeros(n, dtype=np.int64)
    for d in range(1, n):
        sig[d::d] += pow(d, k, pm)
        if d % 1024 == 0:
            sig %= pm
    return sig % pm


def eisenstein_qexp(k: int, mod: Modulus, N: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n; k = 2 gives the quasi-modular E2."""
    if k < 2 or k % 2:
        raise ValueError(f"Eisenstein series need even weight >= 2, got {k}")
    if N < 1:
        raise ValueError("precision must be positive")
    c = Fraction(-2 * k) / bernoulli(k)
    if c.denominator % mod.p == 0:
        raise ValueError(f"normalizing constant of E_{k} is not {mod.p}-integral")
    coeffs = _sigma_mod(k - 1, mod.pm, N) * mod.residue(c) % mod.pm
    coeffs[0] = 1
    return QSeries(mod, coeffs, k, modular=(k != 2))


def _euler_product_mod(pm: int, n: int) -> np.ndarray:
    # prod (1 - q^n) via the pentagonal number theorem
    out = np.zeros(n, dtype=np.int64)
    j = 0
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 >= n:
            break
        sign = -1 if j % 2 else 1
        out[g1] += sign
        g2 = j * (3 * j + 1) // 2
        if j and g2 < n:
            out[g2] += sign
        j += 1
    return out % pm


def delta_qexp(mod: Modulus, N: int) -> QSeries:
    """Delta = q prod (1 - q^n)^24."""
    eta = QSeries(mod, _euler_product_mod(mod.pm, max(N - 1, 1)))
    body = series_pow(eta, 24).coeffs
    coeffs = np.zeros(N, dtype=np.int64)
    coeffs[1:] = body[: N - 1]
    return QSeries(mod, coeffs, 12)


_GENERATOR_WEIGHTS = {"E4": 4, "E6": 6, "Delta": 12}


@lru_cache(maxsize=256)
def generator_qexp(which: str, mod: Modulus, N: int) -> QSeries:
    if which == "E4":
        return eisenstein_qexp(4, mod, N)
    if which == "E6":
        return eisenstein_qexp(6, mod, N)
    if which == "Delta":
        return delta_qexp(mod, N)
    raise ValueError(f"unknown generator {which!r}; expected E4, E6 or Delta")


@lru_cache(maxsize=None)
def eisenstein_cached(k: int, mod: Modulus, N: int) -> QSeries:
    return eisenstein_qexp(k, mod, N)


def dimension(k: int) -> int:
    """dim M_k for SL2(Z)."""
    if k < 0 or k % 2:
        return 0
    if k % 12 == 2:
        return k // 12
    return k // 12 + 1


# weight r0 in {0,4,6,8,10,14} -> exponents (a, b) of E4^a E6^b
_BASE_MONOMIAL = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 14: (2, 1)}


def base_weight(k: int) -> tuple[int, int]:
    """Split an even k with dim M_k > 0 as k = r0 + 12 l, r0 in {0,4,6,8,10,14}."""
    r = k % 12
    r0 = 14 if r == 2 else r
    return r0, (k - r0) // 12


@dataclass(frozen=True)
class EchelonBasis:
    """Basis b_0..b_{dim-1} of M_weight mod p^m with b_i = q^i + O(q^dim)."""

    weight: int
    modulus: Modulus
    precision: int
    matrix: np.ndarray  # shape (dim, precision)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def basis(self) -> list[QSeries]:
        return [QSeries(self.modulus, row, self.weight) for row in self.matrix]

    def combination(self, coords) -> QSeries:
        coords = np.asarray(coords, dtype=np.int64) % self.modulus.pm
        if self.dim == 0:
            return QSeries(self.modulus, np.zeros(self.precision, dtype=np.int64), self.weight)
        return QSeries(self.modulus, matvec_mod(coords, self.matrix, self.modulus.pm), self.weight)

    def reduce(self, s: QSeries) -> tuple[np.ndarray, QSeries]:
        """Forced coordinates of s and the residual s - sum c_i b_i."""
        if s.precision < self.precision:
            raise ValueError("series has less precision than the basis")
        coords = s.coeffs[: self.dim].copy()
        residual = s.truncate(self.precision) - self.combination(coords)
        return coords, residual

    def contains(self, s: QSeries) -> bool:
        return self.reduce(s)[1].is_zero()


def _monomial_rows(weight: int, mod: Modulus, N: int) -> np.ndarray:
    # rows Delta^j E4^(3(l-j)) E_r0, each q^j + O(q^(j+1))
    pm = mod.pm
    r0, ell = base_weight(weight)
    a, b = _BASE_MONOMIAL[r0]
    e4 = generator_qexp("E4", mod, N).coeffs
    e6 = generator_qexp("E6", mod, N).coeffs
    delta = generator_qexp("Delta", mod, N).coeffs
    base = np.zeros(N, dtype=np.int64)
    base[0] = 1
    for _ in range(a):
        base = convolve_mod(base, e4, pm, N)
    for _ in range(b):
        base = convolve_mod(base, e6, pm, N)
    e4cube = convolve_mod(convolve_mod(e4, e4, pm, N), e4, pm, N)
    # E_r0 E4^(3t) for t = 0..l
    eis = [base]
    for _ in range(ell):
        eis.append(convolve_mod(eis[-1], e4cube, pm, N))
    rows = np.zeros((ell + 1, N), dtype=np.int64)
    dpow = np.zeros(N, dtype=np.int64)
    dpow[0] = 1
    for j in range(ell + 1):
        rows[j] = convolve_mod(dpow, eis[ell - j], pm, N)
        dpow = convolve_mod(dpow, delta, pm, N)
    return rows


def _build_echelon(weight: int, mod: Modulus, N: int) -> EchelonBasis:
    dim = dimension(weight)
    if N < dim:
        raise ValueError(f"insufficient precision for basis: weight {weight} needs {dim}, got {N}")
    if dim == 0:
        return EchelonBasis(weight, mod, N, np.zeros((0, N), dtype=np.int64))
    rows = _monomial_rows(weight, mod, N)
    pm = mod.pm
    # unit-triangular back substitution; reducing integer row operations mod p^m
    # commutes with performing them over Z
    for i in range(dim - 2, -1, -1):
        c = rows[i, i + 1: dim]
        rows[i] = (rows[i] - matvec_mod(c, rows[i + 1: dim], pm)) % pm
    rows.setflags(write=False)
    return EchelonBasis(weight, mod, N, rows)


def echelon_basis(weight: int, mod: Modulus, N: int, cache=None) -> EchelonBasis:
    """Echelon basis of M_weight reduced mod p^m to precision N.

    ``cache`` is a :class:`thetacycles.io.BasisCache`; the process-wide default
    cache is used when omitted.
    """
    if weight < 0 or weight % 2:
        raise ValueError(f"weight must be even and nonnegative, got {weight}")
    if N < dimension(weight):
        raise ValueError(
            f"insufficient precision for basis: weight {weight} needs {dimension(weight)}, got {N}")
    if cache is None:
        from .io import default_cache

        cache = default_cache()
    return cache.get(weight, mod, N, _build_echelon)


# ---------------------------------------------------------------- FormExpr

_TERM_RE = re.compile(r"([+-]?)([^+-]+)")
_FACTOR_RE = re.compile(r"^(E4|E6|Delta)(?:\^(\d+))?$")
_NUMBER_RE = re.compile(r"^\d+(?:/\d+)?$")


@dataclass(frozen=True)
class FormExpr:
    """A weight-homogeneous polynomial in E4, E6, Delta with rational coefficients.

    Each term is ``(coefficient, a, b, d)`` standing for c E4^a E6^b Delta^d.
    """

    terms: tuple[tuple[Fraction, int, int, int], ...]
    source: str = ""

    def __post_init__(self):
        if not self.terms:
            raise ValueError("empty form expression")
        weights = {4 * a + 6 * b + 12 * d for _, a, b, d in self.terms}
        if len(weights) != 1:
            raise ValueError(f"form is not weight-homogeneous: weights {sorted(weights)}")

    @property
    def weight(self) -> int:
        _, a, b, d = self.terms[0]
        return 4 * a + 6 * b + 12 * d

    def __str__(self):
        return self.source or " + ".join(
            f"{c}*E4^{a}*E6^{b}*Delta^{d}" for c, a, b, d in self.terms)

    @classmethod
    def generator(cls, name: str) -> "FormExpr":
        return cls.parse(name)

    @classmethod
    def parse(cls, text: str) -> "FormExpr":
        """Parse e.g. ``"Delta"``, ``"E4*Delta"``, ``"3/2*E4^2*E6 - Delta"``."""
        compact = "".join(text.split())
        if not compact:
            raise ValueError("empty form expression")
        pos = 0
        collected: dict[tuple[int, int, int], Fraction] = {}
        for match in _TERM_RE.finditer(compact):
            if match.start() != pos:
                raise ValueError(f"cannot parse form expression {text!r}")
            pos = match.end()
            sign, body = match.groups()
            coef = Fraction(-1 if sign == "-" else 1)
            exps = [0, 0, 0]
            for i, factor in enumerate(body.split("*")):
                if i == 0 and _NUMBER_RE.match(factor):
                    coef *= Fraction(factor)
                    continue
                fm = _FACTOR_RE.match(factor)
                if not fm:
                    raise ValueError(f"bad factor {factor!r} in {text!r}")
                e = int(fm.group(2) or 1)
                exps[("E4", "E6", "Delta").index(fm.group(1))] += e
            key = tuple(exps)
            collected[key] = collected.get(key, Fraction(0)) + coef
        if pos != len(compact):
            raise ValueError(f"cannot parse form expression {text!r}")
        terms = tuple((c, *key) for key, c in collected.items() if c != 0)
        if not terms:
            raise ValueError(f"form expression {text!r} is identically zero")
        return cls(terms, source=text.strip())


def eval_form_expr(f: FormExpr, mod: Modulus, N: int) -> QSeries:
    """q-expansion of f reduced mod p^m to precision N."""
    for c, *_ in f.terms:
        if c.denominator % mod.p == 0:
            raise ValueError(f"coefficient {c} has denominator divisible by {mod.p}")
    gens = [generator_qexp(g, mod, N) for g in ("E4", "E6", "Delta")]
    total = QSeries(mod, np.zeros(N, dtype=np.int64), f.weight)
    for c, *exps in f.terms:
        term = QSeries.constant(1, mod, N, 0)
        for g, e in zip(gens, exps):
            if e:
                term = term * series_pow(g, e)
        total = total + term.scale(c)
    return total.with_weight(f.weight)


# ------------------------------------------------------- Serre derivatives

def _require_weight(f: QSeries) -> int:
    if f.weight_tag is None or not f.modular:
        raise ValueError("series needs the weight tag of a modular form")
    return f.weight_tag


def serre_derivative(f: QSeries, k: int | None = None) -> QSeries:
    """d_k f = theta f - (k/12) f E2, a form of weight k + 2."""
    if k is None:
        k = _require_weight(f)
    mod = f.modulus
    e2 = eisenstein_cached(2, mod, f.precision)
    out = f.theta() - (f * e2).scale(Fraction(k, 12))
    return out.with_weight(k + 2)


def modified_serre_derivatives(f: QSeries, j_max: int) -> list[QSeries]:
    """[f_0, ..., f_{j_max}] for the modified Serre derivative recursion."""
    k = _require_weight(f)
    e4 = generator_qexp("E4", f.modulus, f.precision)
    out = [f]
    if j_max >= 1:
        out.append(serre_derivative(f, k))
    for i in range(1, j_max):
        nxt = serre_derivative(out[i], k + 2 * i) - (e4 * out[i - 1]).scale(
            Fraction(i * (i + k - 1), 144))
        out.append(nxt.with_weight(k + 2 * i + 2))
    return out


def modified_serre_power(f: QSeries, j: int) -> QSeries:
    if j < 0:
        raise ValueError("iteration count must be nonnegative")
    return modified_serre_derivatives(f, j)[j]


def factorial_ratio(top: int, bottom: int) -> int:
    """top!/bottom! as the product of consecutive integers bottom+1..top."""
    if bottom > top:
        raise ValueError("factorial ratio needs bottom <= top")
    out = 1
    for t in range(bottom + 1, top + 1):
        out *= t
    return out


def padic_split(x: int, p: int) -> tuple[int, int]:
    """(u, v) with x = u p^v and p not dividing u; x must be nonzero."""
    if x == 0:
        raise ValueError("zero has no p-adic unit part")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return x, v


def expansion_coefficient(i: int, j: int, k: int) -> int:
    """C(i, j) (i+k-1)!/(j+k-1)!, exactly."""
    return comb(i, j) * factorial_ratio(i + k - 1, j + k - 1)


def theta_power_expansion(f: QSeries, i: int, derivatives: list[QSeries] | None = None) -> QSeries:
    """sum_j C(i,j) (i+k-1)!/(j+k-1)! f_j (E2/12)^(i-j), which equals theta^i f."""
    k = _require_weight(f)
    if i < 0:
        raise ValueError("power must be nonnegative")
    if k == 0 and i > 0:
        # (j-1)! is undefined at j = 0; constants are killed by theta anyway
        return QSeries(f.modulus, np.zeros(f.precision, dtype=np.int64))
    mod = f.modulus
    if derivatives is None or len(derivatives) <= i:
        derivatives = modified_serre_derivatives(f, i)
    e2_12 = eisenstein_cached(2, mod, f.precision).scale(Fraction(1, 12))
    e2_pows = [QSeries.constant(1, mod, f.precision)]
    for _ in range(i):
        e2_pows.append(e2_pows[-1] * e2_12)
    total = QSeries(mod, np.zeros(f.precision, dtype=np.int64))
    for j in range(i + 1):
        c = expansion_coefficient(i, j, k)
        if c % mod.pm == 0:
            continue
        total = total + (derivatives[j] * e2_pows[i - j]).scale(c)
    return total.with_weight(None)


def e2_representative_mod_p2(mod: Modulus, N: int) -> QSeries:
    """12 d(E_{p-1}) E_{p-1}^(2p-1) + p E_{p+1}^p E_{p-1}^(p-2), weight 2 + 2p(p-1)."""
    if mod.m != 2:
        raise ValueError("the E2 representative is defined modulo p^2")
    p = mod.p
    ep1 = eisenstein_cached(p - 1, mod, N)
    epp1 = eisenstein_cached(p + 1, mod, N)
    d_ep1 = serre_derivative(ep1).scale(12)
    rep = d_ep1 * series_pow(ep1, 2 * p - 1) + (series_pow(epp1, p) * series_pow(ep1, p - 2)).scale(p)
    return rep.with_weight(2 + 2 * p * (p - 1))
