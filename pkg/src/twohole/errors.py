"""Exception types raised by the mapping routines."""


class MappingError(ValueError):
    """Base class for every failure raised by this package."""


class PoleInput(MappingError):
    """Evaluation requested at (or numerically at) the preimage of infinity."""


class DomainViolation(MappingError):
    """Point lies outside the domain on which the map is defined."""


class OverlappingCircles(MappingError):
    """The two w-plane circles touch or intersect, e <= 1 + r1."""


class BadShape(MappingError):
    """Shape parameters outside the admissible range of the family."""


class NoRoot(MappingError):
    """No sign change in the bracket handed to the e-solver."""


class NonConvergence(MappingError):
    """Fixed-point iteration and bisection both exhausted their budgets."""


class DegenerateDerivative(MappingError):
    """F'(e) vanishes, so the hole radius cannot be inverted."""


class WrongFamily(MappingError):
    """A closed form was requested for a map it does not describe."""


class InternalConsistencyError(MappingError):
    """A computed result failed its own substitution check."""
