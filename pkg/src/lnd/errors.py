"""Exception hierarchy shared by every module."""


class LNDError(Exception):
    pass


class ParseError(LNDError, ValueError):
    pass


class RingMismatchError(LNDError, ValueError):
    pass


class NotDivisibleError(LNDError, ArithmeticError):
    pass


class ResourceError(LNDError, RuntimeError):
    """A configured budget (Groebner steps, matrix size, ...) was exhausted."""

    def __init__(self, what, budget):
        super().__init__(f"{what} budget of {budget} exceeded")
        self.what = what
        self.budget = budget


class ZeroDerivationError(LNDError, ValueError):
    pass


class NotLNDError(LNDError, ValueError):
    pass


class NotInKernelError(LNDError, ValueError):
    pass


class NotACoordinateSystemError(LNDError, ValueError):
    pass


class GammaMembershipFailed(LNDError, ValueError):
    def __init__(self, which, reason):
        super().__init__(f"tuple {which} is not in Gamma_D: {reason}")
        self.which = which
        self.reason = reason


class InvalidSliceError(LNDError, ValueError):
    pass
