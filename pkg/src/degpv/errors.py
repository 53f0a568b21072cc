"""Exception types shared across the package."""


class DegPVError(Exception):
    """Base class for all errors raised by degpv."""


class DegenerateInput(DegPVError, ValueError):
    """An input lies on an excluded locus (t = 0, nonzero constant term, ...)."""


class HigherOrderPole(DegPVError, ValueError):
    """A residue was requested at a pole of order two or more."""


class NotInOverlap(DegPVError, ValueError):
    """A chart transition was requested outside the overlap of the two charts."""


class ResonantExponents(DegPVError, ValueError):
    """The exponent difference is a negative integer; the series recursion breaks down."""


class FixedSingularity(DegPVError, ArithmeticError):
    """q hit 0 or 1, or t hit 0."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class StepFailure(DegPVError, ArithmeticError):
    """Adaptive step size underflowed, typically at a movable pole.

    ``last_t`` and ``last_y`` hold the last accepted point.
    """

    def __init__(self, message, last_t=None, last_y=None):
        super().__init__(message)
        self.last_t = last_t
        self.last_y = last_y


class PathTooClose(DegPVError, ValueError):
    """An integration path passes too close to a pole of the connection."""
