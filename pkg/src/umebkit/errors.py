"""Exception types shared across the package."""


class ContractViolationError(ValueError):
    """An input violates a documented precondition or invariant."""


class NumericalFailureError(RuntimeError):
    """A numerical routine failed to converge or produced unusable output."""


class FileFormatError(ValueError):
    """A state or basis file is malformed or fails its admission checks."""
