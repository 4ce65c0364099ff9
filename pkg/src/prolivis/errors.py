"""Shared exception base class for the engine."""


class ProlivisError(Exception):
    """Base class for every error raised by this package.

    Subclasses carry a stable ``code`` string used by the CLI for exit-code
    mapping and by the HTTP service for machine-readable error bodies.
    """

    code = "error"

    def __init__(self, message: str, **detail):
        super().__init__(message)
        self.message = message
        self.detail = detail or None
