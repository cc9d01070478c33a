"""Exceptions raised by the wpd library.

Everything derives from WpdError so the CLI can map library failures to the
bad-input exit code in one place. A negative witness is a result, never an
exception.
"""


class WpdError(Exception):
    """Base class for all wpd errors."""


class InvalidParameter(WpdError, ValueError):
    """A physical or numerical parameter is outside its domain."""


class TruncationTooSmall(WpdError):
    """Probability mass beyond the Fock cutoff exceeds the tolerance."""

    def __init__(self, tail: float, tau: float, n_max: int = None):
        self.tail = tail
        self.tau = tau
        self.n_max = n_max
        where = f" at n_max={n_max}" if n_max is not None else ""
        super().__init__(f"tail mass {tail:.3e} exceeds tau={tau:.3e}{where}")


class OrderTooHigh(WpdError):
    """Factorial-moment order larger than the number of detector bins."""


class MissingOrder(WpdError, KeyError):
    """A factorial moment needed by an estimator was not supplied."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "missing order"


class InsufficientData(WpdError):
    """Not enough shots to form a sample covariance."""


class InvalidRange(WpdError, ValueError):
    """A sweep range is empty or malformed."""


class MalformedHistogram(WpdError):
    """A histogram file could not be parsed or is inconsistent."""


class ConfigError(WpdError):
    """A run config file is malformed or fails validation."""
