"""
Exception types raised by the torus orbifold library.

Every contract violation surfaces as an OrbifoldError subclass so callers
(tools, CLI) can tell bad input apart from internal failures.
"""


class OrbifoldError(Exception):
    """Base class for invalid input and violated preconditions."""


class InputFormatError(OrbifoldError, ValueError):
    """Malformed JSON document or schema violation."""


class DimensionMismatchError(OrbifoldError, ValueError):
    """Operands live in ambient spaces of different dimension."""


class ZeroAxialValueError(OrbifoldError, ValueError):
    """An axial value (or a divisor linear form) is identically zero."""


class ConnectionInferenceError(OrbifoldError):
    """The span condition does not single out a connection."""


class NoMatchError(ConnectionInferenceError):
    pass


class AmbiguousMatchError(ConnectionInferenceError):
    pass


class InvalidPairError(OrbifoldError, ValueError):
    """Characteristic pair violates independence or incidence rules."""


class FaceLookupError(OrbifoldError, KeyError):
    """A face (or a meet component) is not part of the enumerated poset."""


class NonUniqueJoinError(OrbifoldError):
    """The common upper bounds of two faces have no minimum."""


class GcdConditionError(OrbifoldError):
    """gcd of the polygon determinants is not 1."""


class ValenceCapError(OrbifoldError):
    """Graph valence exceeds the configured face enumeration cap."""
