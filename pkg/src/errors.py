"""
Exception types shared across the cyclic-weights package.

The CLI maps each of these to a fixed process exit code (see src/cli.py).
"""


class InvalidParameterError(ValueError):
    """Raised for bad field or code parameters (non-prime p, m <= k, reducible modulus)."""


class WorkLimitExceeded(RuntimeError):
    """Raised when an enumeration would exceed the configured work limit."""

    def __init__(self, what: str, work: int, limit: int):
        self.what = what
        self.work = work
        self.limit = limit
        super().__init__(
            f"{what} needs {work} enumeration steps, above the work limit {limit}; "
            f"raise --work-limit (or CW_WORK_LIMIT) to run it anyway"
        )


class UnsupportedCaseError(ValueError):
    """Raised when no closed-form distribution is provided for the requested parameters."""


class ConsistencyError(AssertionError):
    """Two independent derivations of the same quantity disagree."""


class PrecisionError(ConsistencyError):
    """Floating-point transform residual too large to round counts safely."""
