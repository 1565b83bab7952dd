"""Exception types raised across the package."""


class InscribedError(Exception):
    """Base class for all package errors."""


class ParseError(InscribedError, ValueError):
    """A document (curve, profile, request) does not match its format."""


class TooFewPoints(InscribedError, ValueError):
    """Point input is too short to define a closed curve."""


class DegenerateInput(InscribedError, ValueError):
    """Point input collapses to (nearly) a single point."""


class UnknownPreset(InscribedError, KeyError):
    """Requested preset curve name is not registered."""


class ValidationFailed(InscribedError):
    """A curve failed immersion or simplicity checks.

    Carries the offending report in ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ProfileOutOfRange(InscribedError, ValueError):
    """An aspect-angle profile evaluated outside (0, pi)."""


class TooCloseToAxis(InscribedError, ValueError):
    """Point too close to the singular axis w = 0 for the requested map."""


class DegenerateTangent(InscribedError, ValueError):
    """Curve tangent vanishes (below the immersion threshold)."""


class DegenerateRectangle(InscribedError):
    """Converged configuration has (nearly) zero half-diagonal."""


class NotConverged(InscribedError):
    """Iteration ended above the acceptance tolerance."""


class ConvergedDegenerate(InscribedError):
    """Iteration converged onto the degenerate diagonal branch."""


class NoSolutionFound(InscribedError):
    """No seed refined to an accepted rectangle at this grid/slack."""


class NonpositiveSide(InscribedError, ValueError):
    """Rectangle side lengths must be positive."""
