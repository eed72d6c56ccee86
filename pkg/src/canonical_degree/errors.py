class SingularMatrixError(ValueError):
    """Raised when an operation needs an invertible matrix over GF(2)."""


class ConstraintError(ValueError):
    """A curve parameter violates a ∉ {0, 1}, b ∉ {0, 1} or a ≠ b.

    ``constraint`` names the violated condition, e.g. ``"a3 != 1"``.
    """

    def __init__(self, constraint, message=None):
        self.constraint = constraint
        super().__init__(message or f"parameter constraint violated: {constraint}")


class NonFreeActionError(ValueError):
    """The twisted group action has fixed points on the product."""


class NotDivisibleError(ArithmeticError):
    pass
