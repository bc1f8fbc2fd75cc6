"""Arithmetic functions used as series coefficients.

``a``, ``b`` and ``c`` are the multiplicative functions attached to the
theta series (``a`` from the logarithmic derivative of theta_4, ``b`` from
theta_2^4, ``c`` from theta_4^4), ``B`` is the Cauchy square of ``b`` (the
theta_2^8 coefficients) and ``Lambda`` is von Mangoldt's function.

Tables are built by sieving and cached; they grow on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

KINDS = ("a", "b", "c", "B")

_MIN_CAP = 4096


def _round_cap(n: int) -> int:
    cap = _MIN_CAP
    while cap < n:
        cap *= 2
    return cap


@lru_cache(maxsize=None)
def _spf(cap: int) -> np.ndarray:
    """Smallest-prime-factor sieve on 0..cap."""
    spf = np.zeros(cap + 1, dtype=np.int64)
    for p in range(2, math.isqrt(cap) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    idx = np.arange(cap + 1, dtype=np.int64)
    missing = spf == 0
    spf[missing] = idx[missing]
    return spf


def smallest_prime_factors(nmax: int) -> np.ndarray:
    """Array ``spf`` with ``spf[n]`` the least prime dividing ``n`` (n >= 2)."""
    return _spf(_round_cap(nmax))[: nmax + 1]


@lru_cache(maxsize=None)
def _sigma1(cap: int) -> np.ndarray:
    sigma = np.zeros(cap + 1, dtype=np.int64)
    for d in range(1, cap + 1):
        sigma[d::d] += d
    return sigma


def _check_positive(n):
    if int(n) != n or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")
    return int(n)


def sigma1(n: int) -> int:
    """Sum of the positive divisors of ``n``."""
    n = _check_positive(n)
    total = 1
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            pk, acc = 1, 1
            while m % p == 0:
                m //= p
                pk *= p
                acc += pk
            total *= acc
        p += 1 if p == 2 else 2
    if m > 1:
        total *= 1 + m
    return total


def _two_adic(n: np.ndarray):
    """Split ``n = 2**v * odd``; returns ``(v, odd)``."""
    n = n.astype(np.int64)
    low = n & -n
    v = np.zeros_like(n)
    nz = low > 0
    v[nz] = np.log2(low[nz]).round().astype(np.int64)
    odd = np.where(nz, n // np.where(nz, low, 1), 0)
    return v, odd


@dataclass(frozen=True)
class CoeffTable:
    """Memoized values of one coefficient function.

    ``values[n]`` holds the coefficient for ``1 <= n <= cap``; index 0 is
    unused and stored as 0.
    """

    kind: str
    values: np.ndarray
    cap: int

    def __getitem__(self, n):
        return self.values[n]


@lru_cache(maxsize=None)
def _table(kind: str, cap: int) -> CoeffTable:
    if kind not in KINDS:
        raise ValueError(f"unknown coefficient kind {kind!r}")
    if kind == "B":
        b = _table("b", cap).values.copy()
        vals = np.convolve(b, b)[: cap + 1]
    else:
        sigma = _sigma1(cap)
        n = np.arange(cap + 1, dtype=np.int64)
        v, odd = _two_adic(n)
        even = v > 0
        if kind == "a":
            vals = np.where(even, (np.int64(1) << v) * sigma[odd], sigma)
        elif kind == "b":
            vals = np.where(even, 0, sigma)
        else:
            vals = np.where(even, -3 * sigma[odd], sigma)
        vals[0] = 0
    vals = np.ascontiguousarray(vals, dtype=np.int64)
    vals.setflags(write=False)
    return CoeffTable(kind, vals, cap)


def coeff_table(kind: str, nmax: int) -> CoeffTable:
    """Table of ``kind`` coefficients covering at least ``1..nmax``."""
    cap = _round_cap(nmax)
    if kind == "B":
        # quadratic-cost convolution; keep B tables tight
        cap = max(nmax, 64)
        cap = 1 << (cap - 1).bit_length()
    return _table(kind, cap)


def coeff_array(kind: str, nmax: int) -> np.ndarray:
    """Coefficients ``kind(0..nmax)`` as an int64 array (entry 0 is 0)."""
    return coeff_table(kind, nmax).values[: nmax + 1]


def coeff(kind: str, n: int) -> int:
    """Value of the coefficient function ``kind`` at ``n``.

    Examples
    --------
    >>> coeff("a", 12), coeff("b", 15), coeff("c", 6), coeff("B", 2)
    (16, 24, -12, 1)
    """
    n = _check_positive(n)
    if kind not in KINDS:
        raise ValueError(f"unknown coefficient kind {kind!r}")
    if kind == "B":
        if n <= 1 << 14:
            return int(coeff_table("B", n)[n])
        return sum(coeff("b", i) * coeff("b", n - i) for i in range(1, n))
    v = (n & -n).bit_length() - 1
    odd = n >> v
    s = sigma1(odd)
    if v == 0:
        return s
    if kind == "a":
        return (1 << v) * s
    if kind == "b":
        return 0
    return -3 * s


def von_mangoldt(n: int) -> float:
    """``log p`` when ``n`` is a power of the prime ``p``, else 0."""
    n = _check_positive(n)
    if n == 1:
        return 0.0
    spf = smallest_prime_factors(n) if n <= 1 << 22 else None
    p = int(spf[n]) if spf is not None else _least_prime(n)
    m = n
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def _least_prime(n: int) -> int:
    if n % 2 == 0:
        return 2
    p = 3
    while p * p <= n:
        if n % p == 0:
            return p
        p += 2
    return n


@lru_cache(maxsize=None)
def _lambda_array(cap: int) -> np.ndarray:
    spf = _spf(cap)
    n = np.arange(cap + 1, dtype=np.int64)
    p = spf.copy()
    m = n.copy()
    ok = n >= 2
    # strip the least prime repeatedly; prime powers end at 1
    while True:
        div = ok & (m > 1) & (m % np.where(p > 0, p, 1) == 0)
        if not div.any():
            break
        m = np.where(div, m // np.where(p > 0, p, 1), m)
    out = np.where(ok & (m == 1), np.log(np.maximum(p, 1).astype(float)), 0.0)
    out.setflags(write=False)
    return out


def von_mangoldt_array(nmax: int) -> np.ndarray:
    """``Lambda(0..nmax)`` as a float array (``Lambda(0)`` stored as 0)."""
    return _lambda_array(_round_cap(nmax))[: nmax + 1]


def divisor_pairs(j: int) -> list[tuple[int, int]]:
    """All ``(d, j // d)`` with ``d | j``, ``d`` ascending."""
    j = _check_positive(j)
    small = [d for d in range(1, math.isqrt(j) + 1) if j % d == 0]
    large = [j // d for d in reversed(small) if d * d != j]
    return [(d, j // d) for d in small + large]


def is_prime_power(n: int) -> bool:
    return von_mangoldt(n) > 0.0
