"""Exception types shared across the package."""


class MpccError(Exception):
    """Base class for all package errors."""


class InvalidSpec(MpccError, ValueError):
    """A generator spec with nonsensical parameters."""


class InvalidParams(MpccError, ValueError):
    """Algorithm parameters violating their preconditions."""


class InvalidInput(MpccError, ValueError):
    """Input graph outside the family an operation accepts."""


class TerminationOverflow(MpccError, RuntimeError):
    """The main loop exceeded its iteration cap."""


class NoProgress(MpccError, RuntimeError):
    """The shrink phase stopped reducing the vertex count."""


class AuditViolation(MpccError, RuntimeError):
    """A space or size audit failed while running in strict mode."""
