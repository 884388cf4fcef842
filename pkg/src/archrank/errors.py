"""Exception types shared across the package."""


class ArchRankError(Exception):
    """Base class for all archrank errors."""


class DataError(ArchRankError):
    """Malformed, inconsistent, or out-of-schema input data."""


class NumericalError(ArchRankError):
    """A numerical routine failed beyond recovery (e.g. factorization)."""
