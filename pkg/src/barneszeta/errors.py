"""Exception types shared by the evaluators and the command line."""


class DomainError(ValueError):
    """Arguments lie outside the domain of the requested operation."""


class PoleError(DomainError):
    """The requested point is (numerically) a pole of the zeta function."""

    def __init__(self, pole, message=None):
        self.pole = pole
        super().__init__(message or f"pole at s={pole:g}")


class NumericalError(ArithmeticError):
    """A numerical procedure failed to reach its target (bracket, tolerance, overflow)."""
