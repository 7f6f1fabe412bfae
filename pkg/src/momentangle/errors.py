"""Exception hierarchy shared by every module of the package."""


class MomentAngleError(Exception):
    """Base class for all library errors."""


class InputError(MomentAngleError):
    """A file or argument could not be parsed."""


class MalformedFan(MomentAngleError):
    pass


class DimensionMismatch(MomentAngleError):
    pass


class ShapeMismatch(MomentAngleError):
    pass


class RankDeficient(MomentAngleError):
    pass


class Unbounded(MomentAngleError):
    pass


class EmptyPolytope(MomentAngleError):
    pass


class NotGeneric(MomentAngleError):
    pass


class OddCodimension(MomentAngleError):
    pass


class BadPairing(MomentAngleError):
    pass


class NonPrimitiveGenerator(MomentAngleError):
    pass


class NotRegular(MomentAngleError):
    """The fan is singular and the caller did not allow singular input."""


class HVectorMismatch(MomentAngleError):
    pass


class DegreeOverflow(MomentAngleError):
    pass


class InvalidPsi(MomentAngleError):
    pass


class InternalInvariantViolation(MomentAngleError):
    """A postcondition that should be impossible to violate failed."""
