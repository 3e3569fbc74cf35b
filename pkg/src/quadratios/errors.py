"""Shared exception types."""


class SieveTooSmallError(ValueError):
    """An operation needed factorizations beyond the sieve limit."""


class NotPrimitiveError(ValueError):
    """A primitive character was required (squarefree / fundamental modulus)."""


class PoleError(ValueError):
    """Evaluation requested at (or within the guard radius of) a pole."""


class DivergentRegionError(ValueError):
    """Parameters outside the region of absolute convergence."""


class ZeroDetectedError(ArithmeticError):
    """|L| fell below the safety threshold where 1/L or log L is needed."""

    def __init__(self, message, modulus=None):
        super().__init__(message)
        self.modulus = modulus


class InvalidShiftsError(ValueError):
    """Shift parameters violate a theorem's stated range."""
