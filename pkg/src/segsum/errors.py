"""Exception types shared across the package."""


class SegsumError(Exception):
    """Base class for all errors raised by segsum."""


class RangeError(SegsumError, IndexError):
    """An index or query range lies outside the valid domain."""


class NotFoundError(SegsumError, LookupError):
    """A select or edge lookup has no answer."""


class ValueOverflowError(SegsumError, OverflowError):
    """Input values whose prefix sums do not fit the 64-bit working range."""


class NestingError(SegsumError, ValueError):
    """Two edges of a one-page graph cross each other."""

    def __init__(self, first, second):
        self.first = tuple(first)
        self.second = tuple(second)
        super().__init__(f"edges {self.first} and {self.second} cross")


class CapabilityError(SegsumError, RuntimeError):
    """The operation needs a component that was not built."""


class FormatError(SegsumError, ValueError):
    """A serialized index could not be decoded.

    ``code`` is one of ``"truncated"``, ``"bad-magic"``,
    ``"unsupported-version"``, ``"checksum"`` or ``"corrupt"``.
    """

    def __init__(self, code, message):
        self.code = code
        super().__init__(f"{code}: {message}")


class LimitError(SegsumError, ValueError):
    """A request exceeds a size limit of an exhaustive routine."""
