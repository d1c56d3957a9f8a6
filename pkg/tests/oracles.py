"""Independent reference computations over the integers, used only by tests."""
from __future__ import annotations

from fractions import Fraction
from math import comb


def poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def tau_bruteforce(n):
    """tau(1..n-1) from q * prod (1 - q^k)^24, multiplying factor by factor."""
    prod = [1] + [0] * (n - 1)
    for k in range(1, n):
        factor = [0] * n
        factor[0] = 1
        factor[k] = -1
        for _ in range(24):
            prod = poly_mul(prod, factor, n)
    return [0] + prod[: n - 1]


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def bernoulli_akiyama_tanigawa(n):
    """B_n by the Akiyama-Tanigawa algorithm (B_1 = +1/2 convention; n even here)."""
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
    return a[0]


def eisenstein_integer(k, n):
    c = Fraction(-2 * k) / bernoulli_akiyama_tanigawa(k)
    return [Fraction(1)] + [c * sigma(k - 1, m) for m in range(1, n)]


def theta_iterated(coeffs, i):
    return [(m ** i) * c for m, c in enumerate(coeffs)]


def binom(n, k):
    return comb(n, k)
