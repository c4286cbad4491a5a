"""Failure types raised by the numerical routines.

Construction and argument mistakes raise plain ValueError; everything that
can only be discovered while solving (missing crossings, flat fringes,
broken brackets) derives from NumericalError so callers can tell the two
apart.
"""


class NumericalError(Exception):
    """A solver could not produce a result meeting its contract."""


class FlatFringeError(NumericalError):
    """Fringe is constant over the window, so no unique peak exists."""


class HalfCrossingError(NumericalError):
    """The half-maximum level is never crossed inside the window."""

    def __init__(self, message, side=None):
        super().__init__(message)
        self.side = side


class NormalizationError(NumericalError):
    """Normalization was requested but the fringe has no positive maximum."""


class BracketError(NumericalError):
    """A root bracket does not enclose the target value."""
