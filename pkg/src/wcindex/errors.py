"""Exception types shared across the package."""


class WildcardIndexError(Exception):
    pass


class PatternError(WildcardIndexError, ValueError):
    """Raised for malformed pattern syntax; carries the offending offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class BudgetError(WildcardIndexError, ValueError):
    """A pattern asks for more wildcards than the index was built for."""


class ResourceError(WildcardIndexError):
    """A construction guard tripped; ``count`` is the value that exceeded it."""

    def __init__(self, message: str, count: int):
        super().__init__(message)
        self.count = count


class IndexFormatError(WildcardIndexError):
    pass
