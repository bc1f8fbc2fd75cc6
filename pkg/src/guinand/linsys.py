"""The linear system ``T Lambda = V`` at finite truncation.

Dividing the explicit identity at the integer translate ``x = m`` by
``sqrt(m)`` gives one row

    sum_n f(m, n) Lambda(n) = V(m),
    f(m, n) = alpha(mn) beta(1/(mn)) + alpha(m/n) beta(n/m) / n,

with ``V(m)`` the right-hand side of the equation over ``sqrt(m)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import arith
from ._parallel import pmap
from .config import DEFAULT_KERNEL, DEFAULT_POLICY, KernelConfig, TruncationPolicy
from .errors import SingularSystemError
from .explicit import V_of_x
from .report import Check
from .specfun import zeta_zeros
from .theta import alpha, beta

LOG_2PI = math.log(2.0 * math.pi)


def f_matrix(m, n, policy: TruncationPolicy = DEFAULT_POLICY):
    """Vectorized ``f(m, n)``; ``m`` and ``n`` broadcast against each other."""
    m, n = np.broadcast_arrays(np.asarray(m, dtype=float), np.asarray(n, dtype=float))
    if np.any(m < 1) or np.any(n < 1):
        raise ValueError("m and n must be positive integers")
    mn = m * n
    out = alpha(mn, policy) * beta(1.0 / mn, policy) + alpha(m / n, policy) * beta(n / m, policy) / n
    return out[()] if np.ndim(out) == 0 else out


def f_entry(m: int, n: int, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """Matrix entry ``f(m, n)``.

    Examples
    --------
    >>> round(f_entry(1, 1) * 1e4, 4)
    41.1743
    """
    if int(m) != m or int(n) != n:
        raise ValueError("m and n must be positive integers")
    return float(f_matrix(m, n, policy))


def _readonly(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class TMatrix:
    """Truncated system ``entries @ Lambda[1..N] ~ rhs``."""

    N: int
    entries: np.ndarray
    rhs: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.entries.shape != (self.N, self.N) or self.rhs.shape != (self.N,):
            raise ValueError("entries must be N x N and rhs length N")
        if not np.all(np.isfinite(self.entries)) or not np.all(self.entries > 0):
            raise ValueError("entries must be finite and strictly positive")

    def to_csv(self) -> str:
        """Entries as CSV: header ``m\\n,1..N``, one row per ``m``, 17 significant digits."""
        lines = ["m\\n," + ",".join(str(n) for n in range(1, self.N + 1))]
        for m, row in enumerate(self.entries, start=1):
            lines.append(f"{m}," + ",".join(format(v, ".17g") for v in row))
        return "\n".join(lines) + "\n"


def lambda_true(N: int) -> np.ndarray:
    """``Lambda(1..N)``."""
    return np.array(arith.von_mangoldt_array(N)[1:], dtype=float)


def rhs_value(m, cfg: KernelConfig = DEFAULT_KERNEL) -> float:
    """``V(m)``: the right side of the explicit identity at ``x = m`` over ``sqrt(m)``."""
    return V_of_x(float(m), cfg).rhs_total / math.sqrt(m)


def build_system(N: int, cfg: KernelConfig = DEFAULT_KERNEL) -> TMatrix:
    """Fill ``T`` and ``V`` for rows and columns ``1..N``.

    Rows of the right-hand side are evaluated on a thread pool (see
    ``GUINAND_THREADS``).
    """
    if not 1 <= N <= 256:
        raise ValueError("N must lie in [1, 256]")
    idx = np.arange(1, N + 1, dtype=float)
    entries = f_matrix(idx[:, None], idx[None, :], cfg.policy)
    rhs = np.array(pmap(lambda m: rhs_value(m, cfg), range(1, N + 1)))
    meta = {"j_max": cfg.j_max, "tail_epsilon": cfg.policy.tail_epsilon,
            "max_terms": cfg.policy.max_terms, "quad_step": cfg.policy.quad_step}
    return TMatrix(N, _readonly(entries), _readonly(rhs), meta)


def forward_residual(tm: TMatrix, n_tail: int,
                     policy: TruncationPolicy = DEFAULT_POLICY) -> np.ndarray:
    """``r(m) = |sum_{n <= n_tail} f(m, n) Lambda(n) - V(m)|`` for ``m = 1..N``.

    Columns past ``N`` are evaluated afresh so truncation of the matrix is
    kept apart from error in the identity itself.
    """
    if n_tail < tm.N:
        raise ValueError("n_tail must be at least N")
    lam = lambda_true(n_tail)
    cols = np.nonzero(lam)[0] + 1
    m = np.arange(1, tm.N + 1, dtype=float)
    f = f_matrix(m[:, None], cols[None, :].astype(float), policy)
    terms = f * lam[cols - 1]
    sums = np.array([math.fsum(row) for row in terms])
    return np.abs(sums - tm.rhs)


def block_sum(n: int, policy: TruncationPolicy = DEFAULT_POLICY) -> float:
    """``sum_{k=n+1}^{2n-1} f(n, k)``."""
    k = np.arange(n + 1, 2 * n, dtype=float)
    return math.fsum(f_matrix(float(n), k, policy))


def structure_checks(n: int, policy: TruncationPolicy = DEFAULT_POLICY) -> list:
    """Diagonal decay and off-diagonal mass of row ``n``.

    Four checks:

    * ``diag``: ``n f(n, n)`` within 5% of ``alpha(1) beta(1)``;
    * ``block-bound``: the block sum is at least ``log 2 alpha(1) beta(2)``;
    * ``block>n*diag``: the block sum exceeds ``n f(n, n)``;
    * ``block>diag``: the block sum exceeds ``f(n, n)``, i.e. row ``n``
      is not diagonally dominant.

    ``n f(n, n)`` tends to ``alpha(1) beta(1)`` while the block sum stays
    below it, so the third check fails for every ``n``; it is reported as
    computed.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    ab = float(alpha(1.0, policy) * beta(1.0, policy))
    diag = f_entry(n, n, policy)
    block = block_sum(n, policy)
    bound = math.log(2.0) * float(alpha(1.0, policy) * beta(2.0, policy))
    d_err = abs(n * diag - ab)
    return [
        Check(f"structure[n={n}].diag", n * diag, ab, d_err, d_err / ab, d_err < 0.05 * ab, 0.05),
        Check(f"structure[n={n}].block-bound", block, bound, block - bound,
              (block - bound) / bound, block >= bound, None),
        Check(f"structure[n={n}].block>n*diag", block, n * diag, block - n * diag,
              (block - n * diag) / (n * diag), block > n * diag, None),
        Check(f"structure[n={n}].block>diag", block, diag, block - diag,
              (block - diag) / diag, block > diag, None),
    ]


def synthetic_system(tm: TMatrix) -> TMatrix:
    """Same matrix with ``rhs = T @ Lambda_true``, a consistent system."""
    rhs = tm.entries @ lambda_true(tm.N)
    return TMatrix(tm.N, tm.entries, _readonly(rhs), dict(tm.meta, synthetic=True))


@dataclass(frozen=True)
class RecoveryResult:
    """Outcome of one regularized solve."""

    N: int
    ridge: float
    lambda_hat: np.ndarray
    errors_vs_true: np.ndarray
    condition_estimate: float
    forward_residual_inf: float

    @property
    def max_error(self) -> float:
        return float(self.errors_vs_true.max())


def solve_regularized(tm: TMatrix, ridge: float) -> RecoveryResult:
    """Minimize ``|T x - V|^2 + ridge |x|^2``.

    The minimizer is obtained from a QR factorization of the stacked
    matrix ``[T; sqrt(ridge) I]``.  Its triangular factor ``R`` is the
    Cholesky factor of the normal matrix ``T^T T + ridge I``, but the
    normal matrix is never formed, so precision is not lost to squaring the
    condition number.  ``condition_estimate`` is the ratio of the extreme
    pivots ``R_ii^2`` of that factorization.

    Raises
    ------
    SingularSystemError
        If a pivot of ``R`` is numerically zero, which can only happen
        for ``ridge`` at or near 0.
    """
    if not ridge >= 0:
        raise ValueError("ridge must be nonnegative")
    N = tm.N
    A = np.vstack([tm.entries, math.sqrt(ridge) * np.eye(N)])
    b = np.concatenate([tm.rhs, np.zeros(N)])
    Q, R = scipy.linalg.qr(A, mode="economic")
    piv = np.abs(np.diag(R))
    if piv.min() <= N * np.finfo(float).eps * piv.max():
        raise SingularSystemError(f"normal matrix is numerically singular at N={N}, ridge={ridge}")
    x = scipy.linalg.solve_triangular(R, Q.T @ b)
    cond = float((piv.max() / piv.min()) ** 2)
    resid = float(np.max(np.abs(tm.entries @ x - tm.rhs)))
    errors = np.abs(x - lambda_true(N))
    return RecoveryResult(N, float(ridge), _readonly(x), _readonly(errors), cond, resid)


def recovery_check(tm: TMatrix, ridge: float, tol: float = 1e-6, gated: bool = True) -> Check:
    """Check wrapping :func:`solve_regularized`: max error against true ``Lambda``."""
    res = solve_regularized(tm, ridge)
    tag = "synthetic" if tm.meta.get("synthetic") else "true-rhs"
    return Check(f"recovery[{tag},N={tm.N},ridge={ridge:g}]", res.max_error, 0.0, res.max_error,
                 res.max_error, res.max_error < tol, tol, gated,
                 {"lambda_hat": res.lambda_hat.tolist(), "condition_estimate": res.condition_estimate,
                  "forward_residual_inf": res.forward_residual_inf})


def psi0(N: int) -> float:
    """``sum_{n <= N} Lambda(n)`` with weight 1/2 on ``n = N``."""
    if N < 1:
        raise ValueError("N must be positive")
    lam = arith.von_mangoldt_array(N)
    return math.fsum(lam[1:N]) + 0.5 * float(lam[N])


def psi0_explicit(N: float, ordinates) -> float:
    """Truncated explicit formula
    ``N - sum_rho N^rho/rho - log(2 pi) - log(1 - N^-2)/2``,
    each conjugate pair of zeros contributing ``2 Re(N^rho/rho)``.
    """
    gam = np.asarray(list(ordinates), dtype=float)
    rho = 0.5 + 1j * gam
    zero_sum = 2.0 * math.fsum(np.real(np.exp(rho * math.log(N)) / rho))
    return N - zero_sum - LOG_2PI - 0.5 * math.log1p(-1.0 / N**2)


def psi0_compare(N: int, zero_count: int = 100, tol: float = 0.05) -> Check:
    """Compare :func:`psi0` against the explicit formula with ``zero_count`` zeros."""
    if N < 2:
        raise ValueError("N must be at least 2")
    direct = psi0(N)
    zeros = zeta_zeros(zero_count)
    explicit = psi0_explicit(float(N), zeros)
    gap = abs(explicit - direct)
    return Check(f"psi0[N={N},zeros={zero_count}]", explicit, direct, gap, gap / direct,
                 gap / direct < tol, tol,
                 extra={"zeta_log_derivative_at_0": LOG_2PI, "zero_count": zero_count})
