"""Exception hierarchy shared by all modules.

The CLI maps these onto process exit codes: input problems exit 2,
instances beyond a hard guard exit 3.
"""


class FormetricError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(FormetricError, ValueError):
    """An argument violates an operation's contract (shape, range, mismatch)."""


class ParseError(FormetricError, ValueError):
    """Malformed or invalid serialized input; the message carries the field path."""


class UnsupportedInstanceError(FormetricError):
    """Instance exceeds a hard size/space guard (oracle caps, complex guards)."""


class DegenerateConfigurationError(FormetricError):
    """Coincident points where distinct ones are required."""


class NotSemicircleError(FormetricError):
    """Phases (or gap sums) do not fit inside an open half circle."""


class DegenerateGeodesicError(FormetricError):
    """Endpoints lie on each other's cut locus, so the geodesic is not unique.

    Callers that accept the documented deterministic resolution can retry
    with ``tie_break=True``; ``hint`` names the convention that would be used.
    """

    def __init__(self, message: str, hint: str | None = None):
        super().__init__(message)
        self.hint = hint
