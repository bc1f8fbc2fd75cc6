"""Special values of theta quotients at imaginary quadratic points.

``lambda(tau) = (theta_2(tau) / theta_3(tau))^4`` is the modular lambda
function.  On the imaginary axis ``lambda(i/M) = 1 - lambda(iM)``, hence
``lambda(i) = 1/2``, and ``theta_3(i) = pi^(1/4) / Gamma(3/4)``.  Together
with ``16 beta(r) = theta_2(ir)^4`` these make each matrix entry an
algebraic multiple of ``theta_3(i)^4``.
"""

from __future__ import annotations

import math

import numpy as np

from .config import DEFAULT_POLICY, TruncationPolicy
from .report import Check
from .specfun import gamma_c
from .theta import beta, theta


def lambda_modular(y, policy: TruncationPolicy = DEFAULT_POLICY):
    """``lambda(iy) = (theta_2(iy) / theta_3(iy))^4``.

    Examples
    --------
    >>> round(float(lambda_modular(1.0)), 12)
    0.5
    """
    out = (theta(2, y, policy) / theta(3, y, policy)) ** 4
    return out[()] if np.ndim(out) == 0 else out


def _rel_check(name, value, expected, tol, **extra):
    value, expected = float(value), float(expected)
    err = abs(value - expected)
    rel = err / abs(expected)
    return Check(name, value, expected, err, rel, rel < tol, tol, extra=extra)


def theta3_at_i() -> float:
    """Closed form ``theta_3(i) = pi^(1/4) / Gamma(3/4)``."""
    return math.pi**0.25 / gamma_c(0.75).real


def special_value_checks(ms=(2, 3, 5), tol: float = 1e-12,
                         policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """``lambda(i) = 1/2``, the closed form of ``theta_3(i)`` and the reciprocal relation."""
    checks = [
        _rel_check("lambda(i)", lambda_modular(1.0, policy), 0.5, tol),
        _rel_check("theta3(i)", theta(3, 1.0, policy), theta3_at_i(), tol),
    ]
    for M in ms:
        checks.append(_rel_check(f"lambda(i/{M})+lambda({M}i)",
                                 lambda_modular(1.0 / M, policy) + lambda_modular(float(M), policy),
                                 1.0, tol, M=M))
    return checks


def beta_theta_link(r, tol: float = 1e-12, policy: TruncationPolicy = DEFAULT_POLICY) -> Check:
    """``16 beta(r)`` against ``theta_2(ir)^4``.

    Both sides are computed along separate paths: ``beta`` by its
    coefficient series (or through theta_4 at ``1/r`` when ``r < 1``),
    ``theta_2`` by its own lattice sum.
    """
    r = float(r)
    return _rel_check(f"16beta({r:g})=theta2^4", 16.0 * beta(r, policy),
                      theta(2, r, policy) ** 4, tol, r=r)


def F_factor(N: int, y: float, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``F(N iy) = (theta_3(N iy) / theta_3(iy))^4 lambda(N iy)``.

    By construction ``theta_2(N iy)^4 = F(N iy) theta_3(iy)^4``; see
    :func:`decomposition_check`.
    """
    if int(N) != N or N < 1:
        raise ValueError("N must be a positive integer")
    return float((theta(3, N * y, policy) / theta(3, y, policy)) ** 4 * lambda_modular(N * y, policy))


def decomposition_check(N: int, y: float = 1.0, tol: float = 1e-12,
                        policy: TruncationPolicy = DEFAULT_POLICY) -> Check:
    """``theta_2(N iy)^4`` against ``F(N iy) theta_3(iy)^4``."""
    lhs = theta(2, N * y, policy) ** 4
    rhs = F_factor(N, y, policy) * theta(3, y, policy) ** 4
    return _rel_check(f"theta2^4({N}*{y:g}i)=F*theta3^4", lhs, rhs, tol, N=N, y=y)


def modular_suite(tol: float = 1e-12, policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Every special-value check: lambda, theta_3(i), the beta bridge and ``F``."""
    checks = special_value_checks(tol=tol, policy=policy)
    checks += [beta_theta_link(r, tol, policy) for r in (0.5, 1.0, 2.0)]
    checks += [decomposition_check(N, 1.0, tol, policy) for N in range(1, 7)]
    return checks
