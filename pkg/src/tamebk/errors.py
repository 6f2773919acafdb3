"""Exception types raised across the package."""


class TameBKError(Exception):
    """Base class for all errors raised by this package."""


class NotPrime(TameBKError, ValueError):
    pass


class DegreeTooLarge(TameBKError, ValueError):
    pass


class WindowOverflow(TameBKError, ValueError):
    pass


class InvalidParams(TameBKError, ValueError):
    pass


class BadCongruence(TameBKError, ValueError):
    pass


class OutOfRange(TameBKError, ValueError):
    pass


class NotPeriodic(TameBKError, ValueError):
    pass


class NotCuspidal(TameBKError, ValueError):
    pass


class InvalidType(TameBKError, ValueError):
    pass


class InvalidShape(TameBKError, ValueError):
    pass


class NotInPTau(TameBKError, ValueError):
    pass


class ScalarType(TameBKError, ValueError):
    pass


class InvalidSpec(TameBKError, ValueError):
    """A command-line instance that does not describe a valid tame type."""


class InternalInconsistency(TameBKError, RuntimeError):
    """A computed value contradicts a proven identity; always a bug."""


class CuspidalFactorizationFailure(InternalInconsistency):
    pass
