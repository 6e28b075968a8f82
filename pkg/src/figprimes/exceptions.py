class FigurateRangeError(ValueError):
    """An index or target lies outside the range a structure was built for."""


class CacheError(Exception):
    """Base class for unreadable or invalid membership cache files."""


class TruncatedCacheError(CacheError):
    pass


class BadMagicError(CacheError):
    pass


class UnsupportedVersionError(CacheError):
    pass


class ChecksumMismatchError(CacheError):
    pass
