"""Exception types raised by the numerical routines.

Bad arguments raise the builtin ``ValueError``; the classes below signal
numerical conditions the caller may want to handle separately.
"""


class PoleError(ArithmeticError):
    """The barycentric denominator vanished exactly at a non-node point."""

    def __init__(self, points):
        self.points = list(points)
        super().__init__(f"interpolant has a pole at x = {self.points[:5]}")


class SolverError(ArithmeticError):
    """A collocation system was singular or numerically rank deficient."""

    def __init__(self, message, condition=float("inf")):
        self.condition = condition
        super().__init__(f"{message} (condition estimate {condition:.3e})")


class AccuracyLossError(ArithmeticError):
    """An iterative or adaptive procedure could not reach its tolerance."""

    def __init__(self, message, estimate=float("nan")):
        self.estimate = estimate
        super().__init__(f"{message} (achieved estimate {estimate:.3e})")
