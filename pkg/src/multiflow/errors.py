"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Malformed or inconsistent input.

    Raised for bad instance files, duplicate or dangling ids, demands or
    bandwidths on links that do not exist, and similar caller mistakes.
    """


class UncoverableDemandError(ValidationError):
    """A link with positive demand appears in no schedulable set."""


class EnumerationCapError(RuntimeError):
    """The conflict graph exceeds the exact enumeration cap."""


class SolverError(RuntimeError):
    """Numerical breakdown inside the simplex solver."""
