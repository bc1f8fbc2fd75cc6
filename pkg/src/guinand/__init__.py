"""Theta-function kernels for the Guinand explicit formula.

Submodules
----------
arith     coefficient functions a, b, c, B and von Mangoldt's Lambda
theta     Jacobi theta functions, their q-expansions, alpha and beta
specfun   complex Gamma, digamma, zeta, Bessel K of complex order, zeta zeros
kernel    the Fourier pair G, G_hat and the zeta factorization
explicit  the explicit identity for the translate of G by log x
linsys    the truncated system T Lambda = V and the Psi_0 comparison
modular   special values of the lambda function and theta quotients
cli       the ``guinand`` command
"""

from .config import DEFAULT_KERNEL, DEFAULT_POLICY, KernelConfig, TruncationPolicy
from .errors import (ConvergenceError, DomainError, MissedZeroError, PoleError,
                     SingularSystemError, TruncationError)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_KERNEL", "DEFAULT_POLICY", "KernelConfig", "TruncationPolicy",
    "ConvergenceError", "DomainError", "MissedZeroError", "PoleError",
    "SingularSystemError", "TruncationError",
]
