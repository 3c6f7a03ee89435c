"""Exception types raised by the library.

Every precondition violation gets its own class so callers (and the CLI)
can tell a usage error apart from a genuine counterexample.
"""


class PantsGraphError(Exception):
    """Base class for all library errors."""


class InvalidSlope(PantsGraphError):
    pass


class NotAnEdge(PantsGraphError):
    pass


class NoSuchAssociation(PantsGraphError):
    pass


class Unsupported(PantsGraphError):
    pass


class ShapeError(PantsGraphError):
    pass


class InvalidCurve(PantsGraphError):
    pass


class NotConnected(InvalidCurve):
    pass


class UnknownGenerator(PantsGraphError):
    pass


class UnknownCurve(PantsGraphError):
    pass


class NotAPantsDecomposition(PantsGraphError):
    pass


class CurveNotInDecomposition(PantsGraphError):
    pass


class NotAPath(PantsGraphError):
    pass


class TooLong(PantsGraphError):
    pass


class NotAlternating(PantsGraphError):
    pass


class NotAPentagon(PantsGraphError):
    pass


class NotAHexagon(PantsGraphError):
    pass


class IllegalMove(PantsGraphError):
    pass


class NotIllegal(PantsGraphError):
    pass


class NotCertified(PantsGraphError):
    """A search or claim could not be certified complete within the
    configured weight bound."""
