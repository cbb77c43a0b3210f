from __future__ import annotations


class ConvAlgError(Exception):
    """Base class for all library errors."""


class MalformedTable(ConvAlgError, ValueError):
    """A table or relation references an unknown element or is not total."""


class NotALattice(ConvAlgError, ValueError):
    pass


class NotUnital(ConvAlgError):
    pass


class NotGraded(ConvAlgError):
    pass


class MultipleUnits(ConvAlgError):
    pass


class CarrierMismatch(ConvAlgError, ValueError):
    pass


class Undefined(ConvAlgError, KeyError):
    """A partial operation was applied outside its domain of definition."""


class PreconditionError(ConvAlgError):
    pass


class SchemaError(ConvAlgError, ValueError):
    """A structure file does not follow the expected layout."""
