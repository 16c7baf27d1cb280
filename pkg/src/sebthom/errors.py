"""Exception hierarchy. The CLI maps each class to an exit code."""


class SebthomError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(SebthomError, ValueError):
    """An argument lies outside the domain of an operation (e.g. ``pow(1)``)."""


class DimensionError(SebthomError, ValueError):
    """Matrix shapes do not agree."""


class ValidationError(SebthomError, ValueError):
    """A document (atom file, report) violates a data invariant."""


class ParseError(SebthomError, ValueError):
    """Syntax error in an expression, with byte offset and expected tokens."""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(set(expected)))
        detail = f"{message} at offset {offset}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class UnsupportedSummandError(SebthomError, ValueError):
    """A polynomial summand is not of the form c*x^a."""

    def __init__(self, summand):
        self.summand = summand
        super().__init__(
            f"unsupported summand: {summand} is not a pure power c*x^a "
            "(its Milnor number is still available via `sebthom milnor`)"
        )


class NonIsolatedError(SebthomError, ValueError):
    """The Jacobian ideal is not zero-dimensional."""

    def __init__(self, poly):
        self.poly = poly
        super().__init__(f"non-isolated critical locus: {poly}")


class ResourceError(SebthomError, RuntimeError):
    """A configured work bound would be exceeded."""


class UnknownAtomError(SebthomError, KeyError):
    def __str__(self):
        return f"unknown atom: {self.args[0]!r}"
