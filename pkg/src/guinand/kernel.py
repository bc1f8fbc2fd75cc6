"""The Fourier pair G, G-hat and the identities tying G-hat to zeta.

``G`` is the real function

    G(v) = sum_j sum_{d|j} a(d) b(j/d) e^{v/2} exp(-pi (d e^v + (j/d) e^{-v}))
         = e^{v/2} alpha(e^v) beta(e^{-v}),

and its transform ``G_hat(t) = int e^{itv} G(v) dv`` is the Bessel double
series

    G_hat(t) = 2 sum_j sum_{d|j} a(d) b(j/d) (j/d^2)^{s/2} K_s(2 pi sqrt j),  s = 1/2 + it.

The Mellin computation behind it gives ``G_hat((s - 1/2)/i) = E(s) zeta(s)``
with the entire factor ``E`` below, so ``G_hat`` vanishes at every
nontrivial zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import kv as _kv

from . import arith
from .config import DEFAULT_KERNEL, KernelConfig
from .report import Check
from .specfun import bessel_k, gamma_c, zeta_c, zeta_star
from .theta import alpha, beta

SQRT2 = math.sqrt(2.0)


def g_pair(v, x):
    """``g(v, x) = e^{v/2} exp(-(x/2)(e^v + e^{-v}))``; half its Fourier
    transform is ``K_{1/2+it}(x)``."""
    v = np.asarray(v, dtype=float)
    with np.errstate(over="ignore"):
        out = np.exp(0.5 * v - x * np.cosh(v))
    return out[()] if out.ndim == 0 else out


def G_closed(v, cfg: KernelConfig = DEFAULT_KERNEL):
    """``G(v) = e^{v/2} alpha(e^v) beta(e^{-v})``."""
    v = np.asarray(v, dtype=float)
    ev = np.exp(v)
    out = np.exp(0.5 * v) * alpha(ev, cfg.policy) * beta(1.0 / ev, cfg.policy)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class _Divisors:
    """Per-j nonzero weights a(d) w(j/d) and ratios j/d^2 for the double sums."""

    weights: tuple  # tuple of float arrays, one per j
    ratios: tuple


@lru_cache(maxsize=None)
def _divisor_data(weight_kind: str, j_max: int) -> _Divisors:
    a = arith.coeff_array("a", j_max)
    w = arith.coeff_array(weight_kind, j_max)
    weights, ratios = [], []
    for j in range(1, j_max + 1):
        ds = np.array([d for d, _ in arith.divisor_pairs(j)], dtype=np.int64)
        wt = a[ds] * w[j // ds]
        keep = wt != 0
        ds = ds[keep]
        weights.append(wt[keep].astype(float))
        ratios.append(j / ds.astype(float) ** 2)
    return _Divisors(tuple(weights), tuple(ratios))


def G_series(v, cfg: KernelConfig = DEFAULT_KERNEL):
    """Truncated double series for ``G(v)`` (``j <= cfg.j_max``)."""
    data = _divisor_data("b", cfg.j_max)
    v = float(v)
    ev, emv = math.exp(v), math.exp(-v)
    terms = []
    for j, (wt, ratio) in enumerate(zip(data.weights, data.ratios), start=1):
        if wt.size == 0:
            continue
        d = np.sqrt(j / ratio)
        terms.append(wt * np.exp(-math.pi * (d * ev + (j / d) * emv)))
    return math.exp(0.5 * v) * math.fsum(np.concatenate(terms))


def bessel_double_sum(s, cfg: KernelConfig = DEFAULT_KERNEL, weight_kind: str = "b",
                      floor: float = 0.0) -> complex:
    """``sum_j sum_{d|j} a(d) w(j/d) (j/d^2)^{s/2} K_s(2 pi sqrt j)``.

    ``weight_kind`` is ``"b"`` for the theta_4^4 construction and ``"B"``
    for theta_4^8.  The ``j`` loop stops (at the latest at ``j_max``) once
    the real-order bound ``|K_s(x)| <= K_{Re s}(x)`` puts the next term
    below ``tail_epsilon`` times the larger of the biggest term so far and
    ``floor``.
    """
    s = complex(s)
    data = _divisor_data(weight_kind, cfg.j_max)
    sig = abs(s.real)
    eps = cfg.policy.tail_epsilon
    total = 0j
    scale = float(floor)
    for j, (wt, ratio) in enumerate(zip(data.weights, data.ratios), start=1):
        if wt.size == 0:
            continue
        x = 2 * math.pi * math.sqrt(j)
        coef = wt * np.exp(0.5 * s * np.log(ratio))
        # K_{Re s}(x) decreases in x, so once the bound drops it stays down
        bound = float(np.abs(coef).sum()) * float(_kv(sig, x))
        if scale > 0 and bound < 1e-3 * eps * scale:
            break
        term = coef.sum() * bessel_k(s, x, cfg.policy)
        total += term
        scale = max(scale, abs(term))
    return total


def G_hat_series(t, cfg: KernelConfig = DEFAULT_KERNEL) -> complex:
    """Fourier transform ``G_hat(t)`` as the truncated Bessel double series."""
    return 2.0 * bessel_double_sum(0.5 + 1j * complex(t), cfg)


def _prefactor4(s):
    return (s * (s + 1) / (32 * math.pi**2 * SQRT2)
            * (2 ** (s / 2) - 2 ** (-s / 2))
            * (2 ** ((s - 1) / 2) - 2 ** (-(s - 1) / 2)))


def E_factor(s) -> complex:
    """Entire factor with ``E(s) zeta(s) = G_hat((s - 1/2)/i)``.

    ``E(s) = 2 * s(s+1)/(32 pi^2 sqrt 2) (2^{s/2} - 2^{-s/2})
    (2^{(s-1)/2} - 2^{-(s-1)/2}) pi^{-s/2} Gamma(s/2) zeta*(s+1)``.
    The factor ``2^{(s-1)/2} - 2^{-(s-1)/2}`` vanishes at ``s = 1`` and
    cancels the pole of zeta there.
    """
    s = complex(s)
    return complex(2.0 * _prefactor4(s) * math.pi ** (-s / 2) * gamma_c(s / 2) * zeta_star(s + 1))


def zeta_product_lhs(s) -> complex:
    """Closed side of the theta_4^4 identity: prefactor * zeta*(s) zeta*(s+1)."""
    s = complex(s)
    return complex(_prefactor4(s) * zeta_star(s) * zeta_star(s + 1))


def weight8_lhs(s) -> complex:
    """Closed side of the theta_4^8 identity."""
    s = complex(s)
    pref = (s * (s + 2) * (s + 3) / (256 * math.pi**3 * SQRT2)
            * 2 ** (s / 2) * (2 ** ((s - 1) / 2) - 2 ** (-(s - 1) / 2)))
    return complex(pref * zeta_star(s) * zeta_star(s + 3))


def _compare(name, left, right, tol, **extra):
    abs_err = abs(left - right)
    rel_err = abs_err / abs(right) if right != 0 else math.inf
    ratio = left / right if right != 0 else complex("nan")
    extra = dict(extra, ratio=ratio)
    return Check(name=name, value=left, expected=right, abs_err=abs_err,
                 rel_err=rel_err, passed=bool(rel_err < tol), tol=tol, extra=extra)


def verify_factorization(s, cfg: KernelConfig = DEFAULT_KERNEL, tol: float = 1e-8) -> Check:
    """Compare ``E(s) zeta(s)`` against ``G_hat((s - 1/2)/i)``.

    The check carries both sides, the residuals and the ratio ``L/R``, so a
    constant-factor discrepancy shows up as a ratio different from 1.
    """
    s = complex(s)
    left = E_factor(s) * complex(zeta_c(s))
    right = G_hat_series((s - 0.5) / 1j, cfg)
    return _compare(f"factorization[s={_fmt(s)}]", left, right, tol, s=s)


def verify_zeta_product(s, cfg: KernelConfig = DEFAULT_KERNEL, tol: float = 1e-8) -> Check:
    """Compare the zeta*(s) zeta*(s+1) side with the Bessel double sum."""
    s = complex(s)
    return _compare(f"zeta-product[s={_fmt(s)}]", zeta_product_lhs(s), bessel_double_sum(s, cfg), tol, s=s)


def verify_weight8(s, cfg: KernelConfig = DEFAULT_KERNEL, tol: float = 1e-6) -> Check:
    """theta_4^8 variant with ``B`` (Cauchy square of ``b``) as weight.

    ``passed`` refers to the ratio ``L/R`` being 1 within ``tol``; the
    constant-ratio gate across several ``s`` is applied by the caller.
    """
    s = complex(s)
    check = _compare(f"weight8[s={_fmt(s)}]", weight8_lhs(s),
                     bessel_double_sum(s, cfg, weight_kind="B"), tol, s=s)
    return check


def weight8_constant_ratio(s_values, cfg: KernelConfig = DEFAULT_KERNEL, tol: float = 1e-6) -> list:
    """Per-s weight-8 checks plus one gate: the ratio spread across ``s_values``."""
    checks = [verify_weight8(s, cfg, tol) for s in s_values]
    ratios = [c.extra["ratio"] for c in checks]
    ref = ratios[0]
    spread = max(abs(r / ref - 1) for r in ratios)
    gate = Check(name="weight8[constant-ratio]", value=spread, expected=0.0,
                 abs_err=spread, rel_err=spread, passed=bool(spread < tol), tol=tol,
                 extra={"ratios": ratios})
    for c in checks:
        c.gated = False
    return checks + [gate]


def zero_dip(gamma_k: float, cfg: KernelConfig = DEFAULT_KERNEL, offset: float = 0.5,
             tol: float = 1e-3) -> Check:
    """Relative size of ``|G_hat(gamma)|`` against its neighbours ``gamma +- offset``."""
    at = abs(G_hat_series(gamma_k, cfg))
    nbr = max(abs(G_hat_series(gamma_k - offset, cfg)), abs(G_hat_series(gamma_k + offset, cfg)))
    ratio = at / nbr
    return Check(name=f"zero-dip[gamma={gamma_k:.9f}]", value=at, expected=0.0,
                 abs_err=at, rel_err=ratio, passed=bool(ratio < tol), tol=tol,
                 extra={"neighbour_max": nbr})


def _fmt(z: complex) -> str:
    from .report import format_complex

    return format_complex(z)
