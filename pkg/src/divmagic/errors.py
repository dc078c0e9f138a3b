"""Exception hierarchy shared by every divmagic module."""


class DivMagicError(Exception):
    """Base class for all library errors."""


class DomainError(DivMagicError, ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class OutOfRangeError(DivMagicError, ValueError):
    """A numerator exceeds the range the constants were derived for."""


class CapabilityError(DivMagicError, ValueError):
    """Constants were asked for an operation they do not guarantee."""


class SearchExhausted(DivMagicError):
    """No constants exist within the width budget."""
