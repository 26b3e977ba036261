"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input failed a structural check (hermiticity, orthonormality, ...)."""


class UnsupportedSizeError(ValidationError):
    """A dimension is outside the range this package is built for."""
