"""The explicit identity for the translate ``G(v + log x)``.

For every ``x > 0``

    sqrt(x) sum_n Lambda(n) [alpha(xn) beta(1/(xn)) + alpha(x/n) beta(n/x) / n]
        = sqrt(x) G_hat(i/2) + G_hat(-i/2) / sqrt(x)
          - sqrt(x) log(pi) alpha(x) beta(1/x)
          + sqrt(x) int_0^inf J(e^v, x) / (1 - e^{-2v}) dv - gamma sqrt(x) alpha(x) beta(1/x)

with ``J(e^v, x) = 2 e^{-2v} alpha(x) beta(1/x) - e^{-v} alpha(x e^{-v}) beta(e^v/x)
- alpha(x e^v) beta(e^{-v}/x)``.  Translating by ``log x`` multiplies the
transform by ``x^{-it}``, so ``G_hat(i/2)`` picks up ``sqrt(x)`` and
``G_hat(-i/2)`` picks up ``1/sqrt(x)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import arith
from .config import DEFAULT_KERNEL, DEFAULT_POLICY, KernelConfig, TruncationPolicy
from .errors import DomainError, TruncationError
from .kernel import G_hat_series, bessel_double_sum
from .specfun import EULER_GAMMA, digamma_c
from .theta import alpha, beta

LOG_PI = math.log(math.pi)

ORIENTATIONS = ("standard", "flipped")


def _check_x(x):
    x = float(x)
    if not x > 0:
        raise DomainError("translate parameter x must be positive")
    return x


@dataclass(frozen=True)
class PPETerms:
    """Both sides of the explicit identity at one translate ``x``."""

    x: float
    lhs_prime_sum: float
    bessel_boundary: float
    log_pi_term: float
    archimedean: float
    rhs_total: float
    residual_abs: float
    residual_rel: float


def G_translate(v, x, policy: TruncationPolicy = DEFAULT_POLICY):
    """``G(v + log x) = sqrt(x) e^{v/2} alpha(x e^v) beta(e^{-v}/x)``."""
    v = np.asarray(v, dtype=float)
    ev = np.exp(v)
    out = math.sqrt(x) * np.exp(0.5 * v) * alpha(x * ev, policy) * beta(1.0 / (x * ev), policy)
    return out[()] if np.ndim(out) == 0 else out


def prime_sum_cutoff(x: float, policy: TruncationPolicy = DEFAULT_POLICY) -> int:
    """Number of ``n`` needed by :func:`lhs_prime_sum`.

    Both sums decay like ``exp(-pi n min(x, 1/x))``.
    """
    span = max(x, 1.0 / x)
    return int(math.ceil(span / math.pi * math.log(1.0 / policy.tail_epsilon))) + 64


def lhs_prime_sum(x, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Prime-power side ``sqrt(x) sum_n Lambda(n) f(x, n)``.

    The cutoff from :func:`prime_sum_cutoff` is verified a posteriori: the
    largest of the last 16 terms must sit below ``tail_epsilon`` times the
    sum, otherwise the range is doubled (up to ``max_terms``).
    """
    x = _check_x(x)
    nmax = prime_sum_cutoff(x, policy)
    while True:
        lam = arith.von_mangoldt_array(nmax)
        n = np.nonzero(lam)[0]
        nf = n.astype(float)
        terms = lam[n] * (alpha(x * nf, policy) * beta(1.0 / (x * nf), policy)
                          + alpha(x / nf, policy) * beta(nf / x, policy) / nf)
        total = math.fsum(terms)
        tail = terms[n > nmax - 16]
        if tail.size == 0 or tail.max() <= policy.tail_epsilon * abs(total):
            return math.sqrt(x) * total
        if nmax >= policy.max_terms:
            raise TruncationError("prime sum did not converge", math.sqrt(x) * total)
        nmax = min(2 * nmax, policy.max_terms)


@lru_cache(maxsize=None)
def ghat_half(cfg: KernelConfig = DEFAULT_KERNEL) -> tuple[float, float]:
    """``(G_hat(i/2), G_hat(-i/2))``.

    ``G_hat(i/2) = 2 sum a(d) b(j/d) K_0(2 pi sqrt j)`` and
    ``G_hat(-i/2) = 2 sum a(d) b(j/d) (j/d^2)^{1/2} K_1(2 pi sqrt j)``.
    """
    plus = 2.0 * bessel_double_sum(0.0, cfg).real
    minus = 2.0 * bessel_double_sum(1.0, cfg).real
    return float(plus), float(minus)


def bessel_boundary_terms(x, cfg: KernelConfig = DEFAULT_KERNEL) -> float:
    """Boundary terms ``sqrt(x) G_hat(i/2) + G_hat(-i/2)/sqrt(x)`` of the translate."""
    x = _check_x(x)
    plus, minus = ghat_half(cfg)
    r = math.sqrt(x)
    return r * plus + minus / r


def log_pi_term(x, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``-log(pi) G(log x) = -sqrt(x) log(pi) alpha(x) beta(1/x)``."""
    x = _check_x(x)
    return -math.sqrt(x) * LOG_PI * float(alpha(x, policy) * beta(1.0 / x, policy))


def archimedean_integrand(v, x, policy: TruncationPolicy = DEFAULT_POLICY):
    """``J(e^v, x) / (1 - e^{-2v})``.

    ``J`` vanishes at ``v = 0`` with ``J'(0) = -3 alpha(x) beta(1/x)``, so the
    integrand tends to ``-3/2 alpha(x) beta(1/x)``; that limit is returned
    for ``v == 0``.
    """
    v = np.asarray(v, dtype=float)
    ab = float(alpha(x, policy) * beta(1.0 / x, policy))
    out = np.empty_like(v)
    zero = v == 0
    out[zero] = -1.5 * ab
    vv = v[~zero]
    if vv.size:
        ev, emv = np.exp(vv), np.exp(-vv)
        J = (2.0 * emv**2 * ab
             - emv * alpha(x * emv, policy) * beta(ev / x, policy)
             - alpha(x * ev, policy) * beta(emv / x, policy))
        out[~zero] = J / -np.expm1(-2.0 * vv)
    return out[()] if out.ndim == 0 else out


def _gl_panels(edges, order):
    nodes, weights = leggauss(order)
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        xs.append(0.5 * (b - a) * nodes + 0.5 * (b + a))
        ws.append(0.5 * (b - a) * weights)
    return np.concatenate(xs), np.concatenate(ws)


def archimedean_log(x, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Archimedean term through the J-integral.

    Composite Gauss-Legendre on ``(0, v_end]`` (no node at the removable
    singularity ``v = 0``), plus the closed-form tail of the
    ``2 e^{-2v} alpha beta`` piece beyond ``v_end``; the other two pieces of
    ``J`` are below ``tail_epsilon`` there.
    """
    x = _check_x(x)
    ab = float(alpha(x, policy) * beta(1.0 / x, policy))
    span = max(x, 1.0 / x)
    # alpha(x e^v) and beta(e^v / x) die like exp(-pi e^v min(x,1/x))
    v_end = math.log(span * (math.log(1.0 / policy.tail_epsilon) + 10.0) / math.pi) + 1.0
    v_end = max(v_end, 2.0)
    step = 0.25 * policy.quad_step
    edges = [0.0, 0.0625, 0.125, 0.25]
    while edges[-1] < v_end:
        edges.append(min(edges[-1] + step * max(1.0, edges[-1]), v_end))
    vs, ws = _gl_panels(np.array(edges), 24)
    body = float(np.dot(ws, archimedean_integrand(vs, x, policy)))
    tail = -ab * math.log(-math.expm1(-2.0 * v_end))
    r = math.sqrt(x)
    return r * (body + tail) - EULER_GAMMA * r * ab


@lru_cache(maxsize=16)
def _spectral_nodes(cfg: KernelConfig, t_max: float, panel: float, order: int):
    edges = np.arange(0.0, t_max + panel / 2, panel)
    ts, ws = _gl_panels(edges, order)
    g0 = abs(G_hat_series(0.0, cfg))
    floor = 1e-3 * g0
    ghat = np.array([2.0 * bessel_double_sum(0.5 + 1j * t, cfg, floor=floor) for t in ts])
    psi = np.real(digamma_c(0.25 + 0.5j * ts))
    return ts, ws, ghat, psi


def spectral_cutoff(policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Height beyond which ``|G_hat(t)| psi`` is below ``tail_epsilon``.

    ``G_hat`` decays like ``t^2 e^{-pi t/2}``.
    """
    L = math.log(1.0 / policy.tail_epsilon)
    t = 2.0 * L / math.pi
    for _ in range(5):
        t = 2.0 * (L + 2.5 * math.log(max(t, 1.0))) / math.pi
    return math.ceil(t)


def archimedean_spectral(x, cfg: KernelConfig = DEFAULT_KERNEL) -> float:
    """Archimedean term through the digamma integral.

    ``(1/2pi) int Re psi(1/4 + it/2) x^{-it} G_hat(t) dt``, folded onto
    ``t >= 0`` using ``G_hat(-t) = conj G_hat(t)`` and evaluated by
    Gauss-Legendre panels up to :func:`spectral_cutoff`.  Independent of
    :func:`archimedean_log`: it uses the Bessel series for ``G_hat`` and
    never touches ``alpha`` or ``beta``.
    """
    x = _check_x(x)
    panel = 2.0 * cfg.policy.quad_step
    ts, ws, ghat, psi = _spectral_nodes(cfg, spectral_cutoff(cfg.policy), panel, 20)
    integrand = psi * np.real(np.exp(-1j * ts * math.log(x)) * ghat)
    return float(np.dot(ws, integrand)) / math.pi


def rhs_total(x, cfg: KernelConfig = DEFAULT_KERNEL, orientation: str = "standard") -> float:
    """Right-hand side of the explicit identity at ``x``.

    ``orientation="flipped"`` flips the sign of the log-pi term; it is a
    diagnostic only and breaks the identity.
    """
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    sign = 1.0 if orientation == "standard" else -1.0
    return (bessel_boundary_terms(x, cfg) + sign * log_pi_term(x, cfg.policy)
            + archimedean_log(x, cfg.policy))


def V_of_x(x, cfg: KernelConfig = DEFAULT_KERNEL, orientation: str = "standard") -> PPETerms:
    """Evaluate both sides of the explicit identity at ``x``."""
    x = _check_x(x)
    if orientation not in ORIENTATIONS:
        raise ValueError(f"orientation must be one of {ORIENTATIONS}")
    lhs = lhs_prime_sum(x, cfg.policy)
    boundary = bessel_boundary_terms(x, cfg)
    lp = log_pi_term(x, cfg.policy) * (1.0 if orientation == "standard" else -1.0)
    arch = archimedean_log(x, cfg.policy)
    rhs = boundary + lp + arch
    res = abs(lhs - rhs)
    return PPETerms(x=x, lhs_prime_sum=lhs, bessel_boundary=boundary, log_pi_term=lp,
                    archimedean=arch, rhs_total=rhs, residual_abs=res,
                    residual_rel=res / abs(rhs))


@dataclass(frozen=True)
class EliminationResult:
    """``f(x) + f(1/x) - f(1)(sqrt x + 1/sqrt x)`` applied to each side."""

    x: float
    lhs_combined: float
    rhs_combined: float
    boundary_combined: float
    residual: float


def eliminate(x, cfg: KernelConfig = DEFAULT_KERNEL) -> EliminationResult:
    """Remove the ``a sqrt(x) + b/sqrt(x)`` boundary terms from both sides."""
    x = _check_x(x)
    w = math.sqrt(x) + 1.0 / math.sqrt(x)
    px, pinv, p1 = V_of_x(x, cfg), V_of_x(1.0 / x, cfg), V_of_x(1.0, cfg)

    def comb(attr):
        return getattr(px, attr) + getattr(pinv, attr) - getattr(p1, attr) * w

    lhs = comb("lhs_prime_sum")
    rhs = comb("rhs_total")
    return EliminationResult(x=x, lhs_combined=lhs, rhs_combined=rhs,
                             boundary_combined=comb("bessel_boundary"),
                             residual=abs(lhs - rhs))


def bessel_eliminated_residual(x, cfg: KernelConfig = DEFAULT_KERNEL) -> float:
    """Residual of the explicit identity after the boundary elimination."""
    return eliminate(x, cfg).residual
