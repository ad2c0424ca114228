"""Exception types raised across the package."""


class WalkError(Exception):
    """Base class for every error raised by pqrswalk."""


class NotUnitary(WalkError, ValueError):
    def __init__(self, residual, which):
        super().__init__(f"coin is not unitary: worst residual {residual:.3e} ({which})")
        self.residual = residual
        self.which = which


class ParamOutOfRange(WalkError, ValueError):
    pass


class CoinHasZeroEntry(WalkError, ValueError):
    """Raised by closed forms that only hold when abcd != 0."""


class TypeMismatch(WalkError, ValueError):
    pass


class NormDrift(WalkError, ArithmeticError):
    pass


class TooLarge(WalkError, ValueError):
    pass


class OutOfRange(WalkError, IndexError):
    pass


class UnsupportedCoin(WalkError, ValueError):
    pass


class SingularPoint(WalkError, ArithmeticError):
    pass


class ZeroDenominator(SingularPoint, ZeroDivisionError):
    pass


class NoConvergence(WalkError, ArithmeticError):
    def __init__(self, result):
        super().__init__(
            f"series did not converge within n={result.n_used} (tail bound {result.tail_bound:.3e})"
        )
        self.result = result
