"""Exception types shared across the package."""


class DescriptorError(ValueError):
    """A ring or module descriptor is malformed or semantically invalid.

    ``path`` names the offending field (``"base.mask[1][2]"``) when known.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class CapExceeded(RuntimeError):
    """A configured size or enumeration cap would be exceeded.

    Signals that a computation is unavailable at the current caps, not that a
    property failed.
    """


class RingMismatch(ValueError):
    """Operands belong to different rings or carry different sides."""
