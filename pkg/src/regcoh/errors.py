"""Exception types shared across the toolkit."""


class RegcohError(Exception):
    """Base class for all toolkit errors."""


class RingMismatchError(RegcohError):
    """Operands belong to different coefficient rings."""


class DimensionMismatchError(RegcohError):
    """Matrix or morphism shapes are incompatible."""


class UnsupportedRingError(RegcohError):
    """The requested operation is not available over this ring."""


class NotIdempotentError(RegcohError):
    """A morphism expected to satisfy p*p == p does not."""


class NotPolynomialError(RegcohError):
    """A Laurent morphism has support in negative degrees."""


class InvalidLiftError(RegcohError):
    """Supplied lift coefficients fail the leading-coefficient identity."""


class SchemaError(RegcohError):
    """An instance document violates the input schema."""
