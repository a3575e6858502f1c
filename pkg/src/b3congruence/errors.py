"""Exception hierarchy shared by the package."""


class B3Error(Exception):
    """Base class for every error raised by b3congruence."""


class ConductorTooLarge(B3Error):
    pass


class ConductorMismatch(B3Error, ValueError):
    pass


class DivisionByZero(B3Error, ZeroDivisionError):
    pass


class DimensionMismatch(B3Error, ValueError):
    pass


class SingularMatrix(B3Error, ZeroDivisionError):
    pass


class NotTriangular(B3Error, ValueError):
    pass


class NotInvertibleMod(B3Error, ValueError):
    pass


class ReducibleSpec(B3Error, ValueError):
    pass


class BraidRelationViolated(B3Error):
    pass


class NonScalarCenter(B3Error):
    """(AB)^3 failed to be scalar, which means the construction is broken."""


class DoesNotFactor(B3Error, ValueError):
    pass


class RelationViolation(B3Error):
    pass


class OrderCapExceeded(B3Error):
    pass


class WordSyntaxError(B3Error, ValueError):
    pass


class SpecSyntaxError(B3Error, ValueError):
    pass
