"""Exception hierarchy shared by every engine module."""


class ForgeError(Exception):
    """Base class for engine errors."""


class BoundExceeded(ForgeError):
    """A configured size bound (field, group, oracle) would be exceeded."""


class NotAPrimePower(ForgeError, ValueError):
    pass


class NotASubgroup(ForgeError, ValueError):
    """Raised when a handle or element is not contained where it must be."""


class NotNormal(ForgeError, ValueError):
    pass


class CatalogInconsistency(ForgeError):
    """A deterministic search ran dry where theory guarantees a hit."""
