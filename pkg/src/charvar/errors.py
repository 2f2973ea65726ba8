"""Exception types shared across the package."""


class CharvarError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class DegenerateCusp(CharvarError):
    """A cusp holonomy entry vanishes, so the chart is not type-preserving."""


class Inadmissible(CharvarError):
    """A flip or switch lands on a non-admissible triangulation."""

    def __init__(self, msg, edge=None, quantity=None):
        super().__init__(msg)
        self.edge = edge
        self.quantity = quantity


class Unsupported(CharvarError):
    pass


class NotParabolic(CharvarError):
    pass


class NegativeSquare(CharvarError):
    pass


class NoRealSolution(CharvarError):
    pass


class EmptyComponent(CharvarError):
    pass


class ShortOrbit(CharvarError):
    pass


class BadStep(CharvarError):
    pass


class DivByZero(CharvarError, ZeroDivisionError):
    pass
