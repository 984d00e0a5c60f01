"""Exception types shared across the package."""


class MoonshineError(Exception):
    """Base class for all package errors."""


class PrecisionError(MoonshineError):
    """A series was asked for data beyond its tracked validity order."""


class NotInvertibleError(MoonshineError):
    """Series inversion failed (zero series or unknown leading term)."""


class NotRationalError(MoonshineError):
    """A cyclotomic number was coerced to a rational but is not one."""


class ParseError(MoonshineError):
    """Grammar violation while parsing a Frame shape or group label.

    Carries the offending position so callers can point at it.
    """

    def __init__(self, message, text=None, position=None):
        if text is not None and position is not None:
            message = "%s (at position %d in %r)" % (message, position, text)
        super().__init__(message)
        self.text = text
        self.position = position


class ValidationError(MoonshineError):
    """A domain invariant failed (degree, eigenvalue multiplicity, ...)."""


class PairingError(MoonshineError):
    """An eigenvalue multiset does not split into inverse pairs."""


class MembershipError(MoonshineError):
    """A word or vector does not belong to the claimed code or lattice."""


class NotFoundError(MoonshineError):
    """Registry lookup failed; carries near matches for the message."""

    def __init__(self, name, candidates=()):
        self.name = name
        self.candidates = list(candidates)
        hint = ""
        if self.candidates:
            hint = "; close matches: " + ", ".join(self.candidates)
        super().__init__("unknown class name %r%s" % (name, hint))


class VerificationFailure(MoonshineError):
    """An identity or structural check that must hold did not."""
