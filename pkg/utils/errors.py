"""
Exception hierarchy for qscatter

Library code raises these; only the command-line front end catches them
and turns them into exit codes.
"""

from typing import Optional, Sequence


class QScatterError(Exception):
    """Base class for every error raised by qscatter"""


class InvalidArgumentError(QScatterError, ValueError):
    """A parameter violates a documented precondition"""


class NumericDegeneracyError(QScatterError):
    """A denominator vanished where the closed forms forbid it"""


class InconsistentInputError(QScatterError):
    """Input data fail a consistency check (e.g. a non-unitary S-matrix)"""


class OutOfRegimeError(QScatterError):
    """Parameters lie outside the regime an operation supports"""


class RootIsolationError(QScatterError):
    """Bracketing failed to isolate the requested roots"""

    def __init__(self, message: str, grid: Optional[Sequence[float]] = None,
                 values: Optional[Sequence[float]] = None):
        super().__init__(message)
        self.grid = list(grid) if grid is not None else []
        self.values = list(values) if values is not None else []


class ContourProximityError(QScatterError):
    """A zero sits on or too close to an integration contour"""


class RefinementError(QScatterError):
    """Newton refinement did not converge"""

    def __init__(self, message: str, last_iterate: complex):
        super().__init__(message)
        self.last_iterate = last_iterate


class UnphysicalRootError(QScatterError):
    """A denominator zero appeared off the imaginary axis in the upper half plane"""


class ZetaPoleError(QScatterError):
    """The zeta function was evaluated at its pole"""


class AccuracyError(QScatterError):
    """Integrator settings cannot meet the required accuracy"""


class InvalidGridError(QScatterError):
    """A sampling grid is unusable for finite differences"""


class VerificationError(QScatterError):
    """One or more checks of the invariant suite failed"""

    def __init__(self, failed_checks: Sequence[str]):
        super().__init__("Failed checks: " + ", ".join(failed_checks))
        self.failed_checks = list(failed_checks)
