"""Exception types raised across the package."""


class HomWittError(Exception):
    """Base class for all errors raised by homwitt."""


class DivisionByZero(HomWittError, ZeroDivisionError):
    pass


class PoleAtPoint(HomWittError, ValueError):
    """A reduced denominator vanishes at the requested evaluation point."""


class ArityMismatch(HomWittError, ValueError):
    pass


class NotDivisible(HomWittError, ArithmeticError):
    pass


class ZeroInput(HomWittError, ValueError):
    pass


class AllZero(HomWittError, ValueError):
    pass


class MultivariateUnsupported(HomWittError, NotImplementedError):
    pass


class ParseError(HomWittError, ValueError):
    """Malformed expression text. ``position`` is the 0-based offset of the offending token."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotInvertible(HomWittError, ValueError):
    pass


class EqualTwists(HomWittError, ValueError):
    pass


class Unstable(HomWittError, RuntimeError):
    """The GCD over the generator window changed when the window was enlarged."""


class CompatFailed(HomWittError, ValueError):
    pass


class NotAUnit(HomWittError, ValueError):
    pass


class CocycleInvalid(HomWittError, ValueError):
    pass


class UnderdeterminedWindow(HomWittError, ValueError):
    pass


class NotSigmaDerivation(HomWittError, ValueError):
    """The operation needs tau = id, i.e. an ordinary sigma-derivation."""
