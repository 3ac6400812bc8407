"""Exception hierarchy shared by all modules."""


class HeckeError(Exception):
    """Base class for every error raised by heckering."""


class NonIntegral(HeckeError, ValueError):
    pass


class Unsupported(HeckeError):
    pass


class CapExceeded(HeckeError):
    """Coset enumeration produced more cosets than allowed."""


class NotInGroup(HeckeError, ValueError):
    pass


class NotInCoset(HeckeError, ValueError):
    pass


class GroupMismatch(HeckeError, ValueError):
    pass


class DomainMismatch(HeckeError, ValueError):
    pass


class BadDeterminant(HeckeError, ValueError):
    pass


class BadReduction(HeckeError, ValueError):
    pass
