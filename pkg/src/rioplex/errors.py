"""Exception types shared across the package."""


class RioplexError(Exception):
    """Base class for all errors raised by this package."""


class ZeroConstantTermError(RioplexError):
    """A series with zero constant term cannot be multiplicatively inverted."""


class NonzeroInnerConstantError(RioplexError):
    """Composition requires the inner series to have zero constant term."""


class NotOrderOneError(RioplexError):
    """Compositional inversion requires order exactly one."""


class TruncationExceededError(RioplexError):
    """A coefficient or matrix entry beyond the known truncation was requested."""


class InvalidQError(RioplexError):
    """The q-cone parameter must be a positive integer."""


class NotPureError(RioplexError):
    """The operation is defined only for pure simplicial complexes."""


class NotAFaceError(RioplexError):
    """The given vertex set is not a face of the complex."""


class InvalidFacingError(RioplexError):
    """The facet-to-face assignment does not tile the face family."""


class SearchCapExceededError(RioplexError):
    """The brute-force search cap would be exceeded."""


class InvalidComplexError(RioplexError):
    """Malformed simplicial-complex data."""


class InvalidPosetError(RioplexError):
    """The relation is not a strict partial order."""


class InvalidParametersError(RioplexError):
    """Parameters outside the domain of the requested operation."""


class DimensionMismatchError(RioplexError):
    """Vector length is inconsistent with the stated dimension."""


class ParseError(RioplexError):
    """Malformed input file or literal."""
