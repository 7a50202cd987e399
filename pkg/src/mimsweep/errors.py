"""Exception hierarchy shared by every part of the solver."""


class MIMError(Exception):
    """Base class for all errors raised by mimsweep."""


class NotAPermutation(MIMError, ValueError):
    pass


class InvalidTrapezoid(MIMError, ValueError):
    pass


class NotNormalized(MIMError, ValueError):
    pass


class ModelCorrupt(MIMError, RuntimeError):
    """A geometric model violated an assumption the sweep relies on."""


class OutOfRange(MIMError, IndexError):
    pass


class AlreadySameSet(MIMError, RuntimeError):
    """union() was called on two elements of one set (a solver bug)."""


class TooLarge(MIMError, ValueError):
    """The brute-force oracle refused an instance above its cap."""


class UnknownEdge(MIMError, ValueError):
    pass


class BadSpec(MIMError, ValueError):
    pass


class ParseError(MIMError, ValueError):
    pass


class EmptyInstance(ParseError):
    """An instance file declared zero vertices."""


# the CLI reports an oracle refusal under this name
OracleTooLarge = TooLarge
