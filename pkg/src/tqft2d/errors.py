"""Exception hierarchy shared by every module of the package."""


class TQFTError(ValueError):
    """Base class for invalid-input errors raised by this package."""


class NonExactDivision(TQFTError):
    pass


class ShapeError(TQFTError):
    pass


class HookViolation(TQFTError):
    pass


class PreconditionViolation(TQFTError):
    pass


class SizeLimit(TQFTError):
    pass


class UndefinedBeyondPrefix(TQFTError):
    pass


class InsufficientPrefix(TQFTError):
    pass


class PrefixTooShort(TQFTError):
    pass


class MismatchedK(TQFTError):
    pass


class DegenerateInstance(TQFTError):
    pass


class RepeatedRoot(TQFTError):
    pass


class InsufficientWindow(TQFTError):
    pass


class ParseError(TQFTError):
    """Raised by the text-format parsers; ``token`` is the offending input."""

    def __init__(self, message, token=None):
        super().__init__(message)
        self.token = token
