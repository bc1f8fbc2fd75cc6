"""Jacobi theta functions on the positive imaginary axis.

Everything here takes the real parameter ``y > 0`` of ``tau = i*y`` so the
nome is ``q = exp(-pi*y)``.  Below the crossover the series are evaluated
at ``1/y`` through the modular transformation

    theta_3(i/y) = sqrt(y) theta_3(iy),  theta_4(i/y) = sqrt(y) theta_2(iy).

``alpha`` and ``beta`` are the exponential sums built on the coefficient
functions ``a`` and ``b``; they are the only inputs the prime-power
equation needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import arith
from .config import DEFAULT_POLICY, TruncationPolicy
from .errors import DomainError, TruncationError

ALPHA_CROSSOVER = 0.25
BETA_CROSSOVER = 1.0


def _require_positive(y):
    arr = np.asarray(y, dtype=float)
    if not np.all(arr > 0):
        raise DomainError("argument must be positive")
    return arr


def _lattice_sum(y, offset, sign, policy, weight=0):
    """sum_{n>=0} sign^n (n+offset)^(2*weight) exp(-pi ((n+offset)^2 - offset^2) y).

    Vectorized over ``y``; stops once the newest term is below
    ``tail_epsilon`` times the running sum for every entry.
    """
    y = np.asarray(y, dtype=float)
    total = np.zeros_like(y)
    eps = policy.tail_epsilon
    for n in range(policy.max_terms):
        k = n + offset
        term = np.exp(-math.pi * (k * k - offset * offset) * y)
        if weight:
            term = term * k ** (2 * weight)
        if sign < 0 and n % 2:
            total = total - term
        else:
            total = total + term
        if n >= 1 and np.all(term <= eps * np.abs(total)):
            return total
    raise TruncationError("theta series did not converge", total)


def _theta_direct(kind, y, policy):
    if kind == 3:
        return 2.0 * _lattice_sum(y, 0, +1, policy) - 1.0
    if kind == 4:
        return 2.0 * _lattice_sum(y, 0, -1, policy) - 1.0
    if kind == 2:
        return 2.0 * np.exp(-math.pi * y / 4) * _lattice_sum(y, 0.5, +1, policy)
    raise ValueError(f"theta kind must be 2, 3 or 4, got {kind!r}")


_PARTNER = {2: 4, 3: 3, 4: 2}


def theta(kind: int, y, policy: TruncationPolicy = DEFAULT_POLICY, method: str = "auto"):
    """Jacobi ``theta_kind(i*y)`` for ``kind`` in {2, 3, 4}.

    Parameters
    ----------
    kind : {2, 3, 4}
    y : float or array_like
        Positive imaginary part of ``tau``.
    method : {"auto", "direct", "modular"}
        ``"direct"`` sums the series at ``y``; ``"modular"`` sums the partner
        series at ``1/y`` and rescales; ``"auto"`` picks direct for ``y >= 1``.
    """
    y = _require_positive(y)
    if kind not in _PARTNER:
        raise ValueError(f"theta kind must be 2, 3 or 4, got {kind!r}")
    if method == "direct":
        out = _theta_direct(kind, y, policy)
    elif method == "modular":
        out = _theta_direct(_PARTNER[kind], 1.0 / y, policy) / np.sqrt(y)
    elif method == "auto":
        out = np.empty_like(y)
        hi = y >= 1.0
        if hi.any():
            out[hi] = _theta_direct(kind, y[hi], policy)
        if (~hi).any():
            lo = y[~hi]
            out[~hi] = _theta_direct(_PARTNER[kind], 1.0 / lo, policy) / np.sqrt(lo)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out[()] if out.ndim == 0 else out


@dataclass(frozen=True)
class QExpansion:
    """Exact integer q-expansion of a theta power.

    ``coefficients[n]`` is the coefficient of ``q**n`` in the integer part of
    the series.  For theta_2 powers the series is
    ``prefactor * q**offset * sum(coefficients[n] q**n)``; for theta_3 and
    theta_4 ``prefactor`` is 1 and ``offset`` is 0.
    """

    kind: int
    power: int
    coefficients: tuple
    length: int
    prefactor: int = 1
    offset: Fraction = field(default=Fraction(0))

    def shifted(self):
        """Coefficients of the full series in integral powers of q.

        Only defined when ``offset`` is an integer; entry ``n`` is the
        coefficient of ``q**n`` including the prefactor.
        """
        if self.offset.denominator != 1:
            raise ValueError("series has a fractional q-power prefactor")
        shift = int(self.offset)
        return (0,) * shift + tuple(self.prefactor * c for c in self.coefficients)


def _truncated_power(base: np.ndarray, power: int, length: int) -> np.ndarray:
    out = np.zeros(length, dtype=object)
    out[0] = 1
    base = base.astype(object)
    for _ in range(power):
        out = np.convolve(out, base)[:length]
    return out


def theta_power_coeffs(kind: int, power: int, nmax: int) -> QExpansion:
    """Integer q-expansion of ``theta_kind**power`` through ``q**nmax``.

    Examples
    --------
    >>> theta_power_coeffs(4, 4, 3).coefficients
    (1, -8, 24, -32)
    >>> theta_power_coeffs(3, 1, 4).coefficients
    (1, 2, 0, 0, 2)
    """
    if kind not in _PARTNER:
        raise ValueError(f"theta kind must be 2, 3 or 4, got {kind!r}")
    if power not in (1, 2, 4, 8):
        raise ValueError("power must be 1, 2, 4 or 8")
    if not 0 <= nmax <= 10_000:
        raise ValueError("nmax must lie in [0, 10000]")
    length = nmax + 1
    base = np.zeros(length, dtype=np.int64)
    if kind == 2:
        # theta_2 = 2 q^(1/4) sum_{n>=0} q^(n(n+1))
        n = 0
        while n * (n + 1) < length:
            base[n * (n + 1)] += 1
            n += 1
        coeffs = _truncated_power(base, power, length)
        return QExpansion(2, power, tuple(int(c) for c in coeffs), length,
                          prefactor=2 ** power, offset=Fraction(power, 4))
    sign = -1 if kind == 4 else 1
    base[0] = 1
    n = 1
    while n * n < length:
        base[n * n] += 2 * sign ** n
        n += 1
    coeffs = _truncated_power(base, power, length)
    return QExpansion(kind, power, tuple(int(c) for c in coeffs), length)


def _coeff_sum(kind, u, policy):
    """sum_{k>=1} kind(k) exp(-pi k u), vectorized, growing the table as needed."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    if u.size == 0:
        return total
    eps = policy.tail_epsilon
    # enough terms for the slowest-decaying entry, then verify the tail
    umin = float(u.min())
    kmax = int(math.ceil((math.log(1.0 / eps) + 10.0) / (math.pi * umin))) + 8
    kmax = max(kmax, 16)
    if kmax > policy.max_terms:
        kmax = policy.max_terms
    coeffs = arith.coeff_array(kind, kmax).astype(float)
    k = np.arange(1, kmax + 1, dtype=float)
    # block the work to bound memory on large inputs
    flat = u.reshape(-1)
    res = np.empty_like(flat)
    block = max(1, 2_000_000 // kmax)
    for start in range(0, flat.size, block):
        uu = flat[start : start + block, None]
        terms = coeffs[1:] * np.exp(-math.pi * k * uu)
        res[start : start + block] = terms.sum(axis=1)
        last = terms[:, -1]
        bad = last > eps * np.abs(res[start : start + block])
        if bad.any():
            raise TruncationError(
                f"coefficient series for {kind!r} hit max_terms={policy.max_terms}",
                res[start : start + block],
            )
    total = res.reshape(u.shape)
    return total


def log_deriv_theta2(y, policy: TruncationPolicy = DEFAULT_POLICY):
    """d/dy log theta_2(iy) by term-wise differentiation of the direct series."""
    y = _require_positive(y)
    num = _lattice_sum(y, 0.5, +1, policy, weight=1)
    den = _lattice_sum(y, 0.5, +1, policy)
    return -math.pi * num / den


def log_deriv_theta4(y, policy: TruncationPolicy = DEFAULT_POLICY):
    """d/dy log theta_4(iy).

    Equal to ``2*pi*alpha(y)``; the value is positive because theta_4(iy)
    increases from 0 to 1 along the imaginary axis.  For ``y < 1`` the
    derivative is taken through the modular transformation,
    ``D4(y) = -1/(2y) - D2(1/y)/y**2``.
    """
    y = _require_positive(y)
    out = np.empty_like(y)
    hi = y >= 1.0
    if hi.any():
        yy = y[hi]
        num = _lattice_sum(yy, 0, -1, policy, weight=1)
        den = 2.0 * _lattice_sum(yy, 0, -1, policy) - 1.0
        # d/dy [1 + 2 sum (-1)^n e^{-pi n^2 y}] = -2 pi sum (-1)^n n^2 e^{...}
        out[hi] = -2.0 * math.pi * num / den
    if (~hi).any():
        yy = y[~hi]
        out[~hi] = -0.5 / yy - log_deriv_theta2(1.0 / yy, policy) / yy**2
    return out[()] if out.ndim == 0 else out


def alpha(u, policy: TruncationPolicy = DEFAULT_POLICY, method: str = "auto"):
    """``sum_{k>=1} a(k) exp(-pi k u)`` for ``u > 0``.

    Below ``u = 1/4`` the direct sum is replaced by the logarithmic
    derivative of theta_4 taken through the modular transformation, which
    needs only a handful of theta_2 terms at ``1/u``.

    Parameters
    ----------
    method : {"auto", "direct", "modular"}
    """
    u = _require_positive(u)
    if method == "direct":
        out = _coeff_sum("a", u, policy)
    elif method == "modular":
        out = (-0.5 / u - log_deriv_theta2(1.0 / u, policy) / u**2) / (2.0 * math.pi)
    elif method == "auto":
        out = np.empty_like(u)
        hi = u >= ALPHA_CROSSOVER
        if hi.any():
            out[hi] = _coeff_sum("a", u[hi], policy)
        if (~hi).any():
            lo = u[~hi]
            out[~hi] = (-0.5 / lo - log_deriv_theta2(1.0 / lo, policy) / lo**2) / (2.0 * math.pi)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out[()] if np.ndim(out) == 0 else out


def beta(u, policy: TruncationPolicy = DEFAULT_POLICY, method: str = "auto"):
    """``sum_{l>=1} b(l) exp(-pi l u)`` for ``u > 0``.

    For ``u < 1`` uses ``beta(u) = theta_4(i/u)**4 / (16 u**2)``.
    """
    u = _require_positive(u)
    if method == "direct":
        out = _coeff_sum("b", u, policy)
    elif method == "modular":
        out = _theta_direct(4, 1.0 / u, policy) ** 4 / (16.0 * u**2)
    elif method == "auto":
        out = np.empty_like(u)
        hi = u >= BETA_CROSSOVER
        if hi.any():
            out[hi] = _coeff_sum("b", u[hi], policy)
        if (~hi).any():
            lo = u[~hi]
            out[~hi] = _theta_direct(4, 1.0 / lo, policy) ** 4 / (16.0 * lo**2)
    else:
        raise ValueError(f"unknown method {method!r}")
    return out[()] if np.ndim(out) == 0 else out
