"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Input inside the domain but outside the validated numerical envelope."""
