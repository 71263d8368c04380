"""Exception hierarchy shared across the package."""


class TopofaceError(Exception):
    """Base class for all package-specific errors."""


class DegeneracyError(TopofaceError):
    """A geometric predicate hit a configuration it refuses to resolve
    (crossing at a bend, overlapping segments, ray through an endpoint)."""


class NotSimpleError(TopofaceError):
    """A closed polyline expected to be a simple polygon self-intersects."""


class GeneralPositionError(TopofaceError):
    """Input points violate general position (collinear triple, coincident
    crossings, ...)."""


class ParseError(TopofaceError):
    """A drawing file is malformed; message carries field diagnostics."""


class NotOuterVertexError(TopofaceError):
    """The requested vertex does not lie on the unbounded cell's boundary."""


class ReprojectionFailure(TopofaceError):
    """Inversion-based reprojection did not converge within its budget."""


class ConstructionError(TopofaceError):
    """A generator's self-check failed; the produced drawing is wrong."""


class NotPlaneError(TopofaceError):
    """An edge subset expected to be crossing-free has a crossing."""


class NotOnBoundaryError(TopofaceError):
    """A vertex is not on the face boundary it was claimed to be on."""


class NotJordanError(TopofaceError):
    """A cycle expected to trace a non-self-intersecting curve does not."""


class OnBoundaryError(TopofaceError):
    """A query point lies on an arc or node of the arrangement."""


class NotAdjacentError(TopofaceError):
    """Two triangles are not adjacent at the apex."""


class TooLargeError(TopofaceError):
    """An exhaustive operation was asked for an instance above its guard."""


class LemmaViolation(TopofaceError):
    """A search whose success is guaranteed for valid complete simple
    drawings came up empty.  Carries a witness payload for debugging."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantViolation(TopofaceError):
    """An instrumented structural invariant failed mid-pipeline."""


class PreconditionError(TopofaceError):
    """An operation's stated precondition does not hold."""
