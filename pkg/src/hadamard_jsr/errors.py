"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class CapExceeded(RuntimeError):
    """A constructed set or word enumeration would exceed its cardinality cap."""

    def __init__(self, message, cap):
        super().__init__(message)
        self.cap = cap


class ConvergenceError(RuntimeError):
    """Iteration cap hit before the requested bracket width was reached.

    ``bracket`` carries the best enclosure obtained so far.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class RegimeError(ValueError):
    """Weight vector regime does not match the operation's hypothesis."""


class SoundnessError(RuntimeError):
    """A certified lower bound exceeded a certified upper bound (bug sentinel)."""


class InstanceFormatError(ValueError):
    """Instance file rejected; message pinpoints the offending element."""
