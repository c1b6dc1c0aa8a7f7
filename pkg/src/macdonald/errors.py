"""Exception hierarchy shared by the evaluation, estimation and solver layers."""


class MacdonaldError(ValueError):
    """Base class for all domain errors raised by this package."""


class PoleError(MacdonaldError):
    """Gamma function evaluated at (or within tolerance of) a pole."""


class DegeneratePochhammerError(MacdonaldError):
    """A factor of a Pochhammer denominator vanishes."""


class IntegerOrderError(MacdonaldError):
    """The ascending-series form of K is not valid for integer order."""


class RangeError(MacdonaldError):
    """Argument outside the supported range of an approximation."""


class RegimeError(MacdonaldError):
    """No asymptotic regime applies to the requested (order, label) pair."""


class ContinuationStall(MacdonaldError):
    """Continuation step shrank below the floor without an acceptable zero.

    The partial trajectory computed so far is attached as ``trajectory``.
    """

    def __init__(self, message, trajectory=None):
        super().__init__(message)
        self.trajectory = trajectory


class NoCrossingError(MacdonaldError):
    """The traced zero does not cross arg z = -pi inside the given bracket."""
