"""Exception types shared across the package."""


class CesDemandError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CesDemandError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ValidationError(CesDemandError, ValueError):
    """A composite structure (weights, tree, scenario) fails its invariants."""


class ConfigError(ValidationError):
    """A scenario file cannot be parsed.  Carries a location string such as
    ``file.json:12:3`` or ``tree.children[1].weights``."""

    def __init__(self, message, location=None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
