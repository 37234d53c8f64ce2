"""Exception types shared across the package."""


class MeadowError(Exception):
    """Base class for every domain error raised by this package."""


class ParseError(MeadowError):
    """Raised on malformed input text; carries position and expectations."""

    def __init__(self, message, line, column, expected=(), found=None):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found


class SignatureError(MeadowError):
    """`bot` occurred in input text parsed under the plain signature."""


class SignatureMismatch(MeadowError):
    """A term's signature does not fit the operation or structure at hand."""


class UnboundVariable(MeadowError):
    def __init__(self, name):
        super().__init__(f"unbound variable: {name}")
        self.name = name


class InfiniteCarrier(MeadowError):
    """An exhaustive sweep was requested over an infinite carrier."""


class AlreadyTotal(MeadowError):
    """Totalisation applied to a structure whose division is already total."""


class AlreadyEnlarged(MeadowError):
    """Enlargement applied to an already enlarged structure."""


class NotEnlarged(MeadowError):
    """An enlargement-only operation was applied to a plain structure."""


class CarrierTooSmall(MeadowError):
    """Stripping bot would leave an empty carrier."""


class EnlargedStructure(MeadowError):
    """Three-valued satisfaction was asked of an enlarged structure."""


class NotTotalStructure(MeadowError):
    """Classical evaluation was asked of a structure with partial operations."""


class InvalidStructureSpec(MeadowError):
    def __init__(self, spec):
        super().__init__(f"unknown structure specifier: {spec!r}")
        self.spec = spec
