"""Exception hierarchy.

Every error the library raises derives from :class:`ReillyError`, so the CLI
can map the whole family to a single exit code.
"""


class ReillyError(Exception):
    pass


class ValidationError(ReillyError, ValueError):
    pass


class TooFewVertices(ValidationError):
    pass


class ZeroLengthEdge(ValidationError):
    pass


class SelfIntersection(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class NonFinite(ValidationError):
    pass


class NestedEdges(ValidationError):
    """Two star edges lie on the same ray (one contains the other)."""


class NonPositiveLength(ValidationError):
    pass


class LengthMismatch(ValidationError):
    pass


class ParameterOutOfRange(ValidationError):
    pass


class NoConvergence(ReillyError, ArithmeticError):
    pass


class AllZeroSpectrum(ReillyError):
    pass


class GridTooCoarse(ReillyError):
    pass


class RootCountMismatch(ReillyError):
    pass
