"""Exception types shared across the package."""


class FlaglapError(Exception):
    """Base class for package errors."""


class DomainError(FlaglapError, ValueError):
    """An argument violates a documented precondition."""


class ResourceRefusal(FlaglapError):
    """A computation would exceed a configured size cap and is refused
    rather than attempted."""


class IntegrityError(FlaglapError):
    """An internal consistency check failed (e.g. a characteristic
    polynomial of a Laplacian block with non-real roots)."""
