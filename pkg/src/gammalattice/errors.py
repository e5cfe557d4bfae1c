"""Exception types shared across the package."""

from __future__ import annotations

from fractions import Fraction


class GammaLatticeError(Exception):
    """Base class for all errors raised by this package."""


class MissingKappaError(GammaLatticeError):
    """A shifted argument family was built without a shift value."""


class InvalidKappaError(GammaLatticeError):
    """A shift value lies outside the open interval (0, 1)."""


class GuardExceededError(GammaLatticeError):
    """A brute-force enumeration would exceed its size guard."""


class SpecMismatchError(GammaLatticeError):
    """Lattice family, shift, and index set are inconsistent."""


class NotSquareError(GammaLatticeError):
    """A square-only operation was applied to a rectangular matrix."""


class SingularMatrixError(GammaLatticeError):
    """Inversion of a matrix whose determinant is zero."""

    def __init__(self, message: str, det: Fraction = Fraction(0)):
        super().__init__(message)
        self.det = det


class NonIncreasingIndicesError(GammaLatticeError):
    """An index set is not strictly increasing (or has a negative entry)."""


class DimensionMismatchError(GammaLatticeError):
    """Matrix shapes are incompatible for the requested product."""


class PoleArgumentError(GammaLatticeError):
    """Gamma or polygamma requested at a non-positive integer."""
