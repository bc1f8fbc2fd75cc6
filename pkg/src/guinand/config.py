"""Truncation and kernel configuration shared by the evaluators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class TruncationPolicy:
    """Tolerances shared by every series and quadrature evaluator.

    Parameters
    ----------
    tail_epsilon : float
        Relative size below which the tail of a series is dropped.
    max_terms : int
        Hard cap on the number of terms of any series.
    quad_step : float
        Multiplier on the default quadrature step sizes; values below 1
        refine every rule, values above 1 coarsen it.
    """

    tail_epsilon: float = 1e-15
    max_terms: int = 1_000_000
    quad_step: float = 1.0

    def __post_init__(self):
        if not self.tail_epsilon > 0:
            raise ValueError("tail_epsilon must be positive")
        if self.max_terms < 16:
            raise ValueError("max_terms must be at least 16")
        if not self.quad_step > 0:
            raise ValueError("quad_step must be positive")


@dataclass(frozen=True)
class KernelConfig:
    """Cutoff for the outer ``j`` sum of the Bessel double series.

    ``j_max`` is a hard cap; terms whose a-priori bound is already below
    ``policy.tail_epsilon`` are skipped before it is reached.
    """

    j_max: int = 200
    policy: TruncationPolicy = field(default_factory=TruncationPolicy)

    def __post_init__(self):
        if self.j_max < 20:
            raise ValueError("j_max must be at least 20")
        # e^{-2 pi sqrt(j_max)} is the relative size of the first dropped j
        if -2 * math.pi * math.sqrt(self.j_max) > math.log(self.policy.tail_epsilon):
            raise ValueError(
                f"j_max={self.j_max} leaves a tail e^(-2pi sqrt(j_max)) above "
                f"tail_epsilon={self.policy.tail_epsilon}"
            )


DEFAULT_POLICY = TruncationPolicy()
DEFAULT_KERNEL = KernelConfig()
