"""Exception hierarchy shared by all merolocus modules."""

from __future__ import annotations


class MerolocusError(Exception):
    """Base class for all package errors."""


class NotRegularPoint(MerolocusError):
    """Raised when an operation requires a point of the regular set Delta
    (neither a zero nor a pole) but the point coincides with an anchor."""


class UnwrapAliasing(MerolocusError):
    """Raised when two consecutive principal phases differ by exactly pi,
    so the unwrapping branch cannot be decided from the samples."""


class InvalidIndex(MerolocusError):
    """Raised for an out-of-range zero/pole index."""


class DegenerateGeometry(MerolocusError):
    """Raised when two anchors coincide and an angle formula would take the
    argument of a zero vector."""


class NonPositiveExponent(MerolocusError):
    """Raised when an exponent that must be positive is not."""


class CorrectorDivergence(MerolocusError):
    """Raised when the Newton corrector fails even at the minimum step."""


class OutOfValidityRegion(MerolocusError):
    """Raised when a built-in special function is evaluated outside the
    rectangle where its accuracy contract holds."""


class UnknownFunction(MerolocusError):
    """Raised for an unregistered catalog name."""


class EmptyInput(MerolocusError):
    """Raised when a plot is requested for no curves."""
