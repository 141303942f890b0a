"""Exception types raised by the library."""

from __future__ import annotations


class FinAWFSError(Exception):
    """Base class for all library errors."""


class BoundaryMismatch(FinAWFSError, ValueError):
    """Two morphisms were combined whose boundaries do not line up."""


class DomainMismatch(FinAWFSError, ValueError):
    """A functor or comonad was applied outside its source category."""


class HomSetTooLarge(FinAWFSError):
    """A brute-force enumeration would exceed the configured hom-set cap.

    The caller is expected to shrink the universe (or raise the cap
    explicitly); enumerations are never silently truncated.
    """

    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"hom-set of size {count} exceeds cap {cap}")


class NonCommutingSquare(FinAWFSError, ValueError):
    """A purported arrow-category morphism does not commute."""


class NotAnLMap(FinAWFSError):
    """A map expected to carry a left cleavage admits none."""


class UnsupportedCategory(FinAWFSError, ValueError):
    pass


class UnsupportedRing(FinAWFSError, ValueError):
    pass


class EncodingError(FinAWFSError, ValueError):
    """Malformed object, morphism or scenario text."""
