"""Exception types shared across the package."""


class WeakseqError(Exception):
    """Base class for all errors raised by this package."""


class ResourceLimitError(WeakseqError):
    """A configurable resource cap (state count, expansion size) was hit.

    Carries enough context to report the cap that fired; never raised in
    place of a wrong answer.
    """

    def __init__(self, message: str, *, cap: int | None = None, used: int | None = None):
        super().__init__(message)
        self.cap = cap
        self.used = used


class InternalInvariantError(WeakseqError):
    """A guaranteed-by-theorem step failed; signals a bug, not bad input."""


class ZeroCoefficientError(WeakseqError):
    """The requested certificate monomial has coefficient zero."""


class MonomialBoundError(WeakseqError):
    """The certificate monomial does not divide the bounding monomial."""


class DegreeMismatchError(WeakseqError):
    """The certificate monomial's total degree differs from the system degree."""


class FactorizationError(WeakseqError):
    """A factor survived the effort cap as composite-unfactored."""
