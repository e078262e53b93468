"""Exception types shared across the package."""


class HoleyMagicError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(HoleyMagicError):
    """Grid dimensions or spec parameters are inconsistent."""


class ParseError(HoleyMagicError):
    """Malformed MRX text.  Carries the 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ParityError(HoleyMagicError):
    """Parameters violate a parity hypothesis."""


class NotConstructible(HoleyMagicError):
    """The requested object does not exist for these parameters."""


class BadIngredient(HoleyMagicError):
    """An ingredient grid failed validation inside a constructor."""


class SearchBudgetExceeded(HoleyMagicError):
    """Backtracking gave up before exhausting the space.  Inconclusive,
    never evidence of nonexistence."""


class CacheError(HoleyMagicError):
    """The ingredient cache could not be read or written."""


class CorruptCache(CacheError):
    """A cache entry failed re-verification on load."""
