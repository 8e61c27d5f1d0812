"""Exception types raised across the package."""


class HeckeGradeError(Exception):
    """Base class for all library errors."""


class NonPolynomialQuotient(HeckeGradeError, ArithmeticError):
    pass


class NonIntegralAtP(HeckeGradeError, ArithmeticError):
    pass


class FieldMismatch(HeckeGradeError, ValueError):
    pass


class OddBoundary(HeckeGradeError, ValueError):
    pass


class ProfileMismatch(HeckeGradeError, ValueError):
    pass


class NotSquareProfile(HeckeGradeError, ValueError):
    pass


class ConfigurationAbsent(HeckeGradeError, ValueError):
    pass


class PoleAtZero(HeckeGradeError, ArithmeticError):
    pass


class ProjectorMissing(HeckeGradeError, ValueError):
    pass


class ChiNotHomomorphism(HeckeGradeError, ValueError):
    pass


class SizeLimit(HeckeGradeError, ValueError):
    pass


class InvalidRealization(HeckeGradeError, ValueError):
    pass


class NotAHomomorphism(HeckeGradeError, ValueError):
    pass


class UnsupportedBackend(HeckeGradeError, NotImplementedError):
    pass


class NoBarInvolution(HeckeGradeError, ValueError):
    pass


class ConfigError(HeckeGradeError, ValueError):
    """Configuration document does not match the schema."""
