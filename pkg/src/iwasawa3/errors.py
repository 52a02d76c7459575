class PrecisionError(ArithmeticError):
    """A result would need more 3-adic digits than the operands carry."""


class IntegralityError(ArithmeticError):
    """An exact division left a remainder where an integral result was required."""


class NoSquareRootError(ArithmeticError):
    """Hensel lifting was asked for a square root that does not exist."""


class HypothesisError(ArithmeticError):
    """A congruence normal form was requested for an element that violates its hypothesis."""


class LogicError(RuntimeError):
    """An internal invariant failed; indicates a violated precondition upstream."""
