"""Exception hierarchy shared across the package."""


class OpineqError(Exception):
    """Base class for all package-specific errors."""


class OrderError(OpineqError, ValueError):
    """Requested jet order exceeds the supported maximum."""


class DomainError(OpineqError, ValueError):
    """Evaluation outside a function's domain (or at a breakpoint).

    Carries the offending point in ``x`` when known.
    """

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ParseError(OpineqError, ValueError):
    """Syntax error in an expression string; ``position`` is a 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnboundParameterError(OpineqError, ValueError):
    """An expression references a parameter with no bound value."""


class QuadratureError(OpineqError, RuntimeError):
    """Adaptive quadrature failed to converge; carries the worst panel."""

    def __init__(self, message, panel=None):
        super().__init__(message)
        self.panel = panel


class ODEError(OpineqError, RuntimeError):
    """Adaptive ODE integration failed (step collapse, step budget)."""

    def __init__(self, message, x=None):
        super().__init__(message)
        self.x = x


class ConfigError(OpineqError, ValueError):
    """Malformed configuration file or CLI usage."""
