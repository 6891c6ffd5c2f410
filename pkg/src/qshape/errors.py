"""Exception types raised by the numerical engine."""


class QShapeError(Exception):
    """Base class for all engine errors."""


class DomainError(QShapeError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(QShapeError, RuntimeError):
    """An iterative method failed to meet its tolerance.

    ``stage`` names the sub-computation that failed (``"peak"``,
    ``"level_points"``, ``"median"``, ...) when known.
    """

    def __init__(self, message, stage=None):
        self.stage = stage
        if stage:
            message = f"[{stage}] {message}"
        super().__init__(message)
