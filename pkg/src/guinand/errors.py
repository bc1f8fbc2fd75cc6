"""Exception types raised by the numerical routines."""


class DomainError(ValueError):
    """Argument outside the domain of the function."""


class PoleError(ValueError):
    """Evaluation requested at a pole."""


class TruncationError(RuntimeError):
    """A series or sum did not reach its tolerance within the term cap.

    The partial sum reached before giving up is kept on ``partial_sum``.
    """

    def __init__(self, message, partial_sum=None):
        super().__init__(message)
        self.partial_sum = partial_sum


class ConvergenceError(RuntimeError):
    """Quadrature or root refinement failed to converge."""


class MissedZeroError(RuntimeError):
    """Sign-change count disagrees with the zero-counting estimate."""


class SingularSystemError(RuntimeError):
    """Factorization of a (regularized) linear system broke down."""
