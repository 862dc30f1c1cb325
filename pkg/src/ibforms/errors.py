"""Exception types shared across the package."""


class ExactAlgebraError(Exception):
    """Base class for every mathematical error raised by this package."""


class UnsupportedDomain(ExactAlgebraError):
    """The coefficient ring does not support the requested operation."""


class UnsupportedMap(ExactAlgebraError):
    """No canonical ring map of the requested kind exists."""


class BadSpec(ExactAlgebraError):
    """A raw algebra/cocycle/multiloop description is malformed."""


class ShapeMismatch(ExactAlgebraError):
    """An operation expects one of the named constructor shapes."""


class NotLie(ExactAlgebraError):
    """Antisymmetry or the Jacobi identity fails on a basis triple."""


class NotUnital(ExactAlgebraError):
    """The algebra has no verified two-sided identity element."""


class NotInvariant(ExactAlgebraError):
    """A Gram vector fails to annihilate an invariance relation."""

    def __init__(self, message, triple=None):
        super().__init__(message)
        self.triple = triple


class BadComplement(ExactAlgebraError):
    """The module does not split as R*b0 + ac(B)."""


class InvalidCocycle(ExactAlgebraError):
    """The gluing matrix is not a semilinear algebra automorphism
    or fails U*sigma(U) = 1."""


class TwoNotUnit(ExactAlgebraError):
    """The fixed-point computation needs 2 invertible in the base ring."""


class FixedPointsNotFree(ExactAlgebraError):
    """The descended module is not free of the expected rank."""


class ValueNotInR(ExactAlgebraError):
    """A descended form value has a nonzero extension component."""

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class MissingRootOfUnity(ExactAlgebraError):
    """The base field lacks a primitive root of unity of the needed order."""


class NotDiagonalizable(ExactAlgebraError):
    """Eigenspace dimensions do not add up to the algebra dimension."""


class NotCentralSimple(ExactAlgebraError):
    """The coordinate algebra of a loop construction must be central."""
