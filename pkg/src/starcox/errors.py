class StarcoxError(ValueError):
    """Base class for input errors raised by this package."""


class InvalidShapeError(StarcoxError):
    pass


class UnsupportedGraphError(StarcoxError):
    pass


class DomainError(StarcoxError):
    pass


class NotHermitianError(StarcoxError):
    pass
