"""Exception hierarchy for qwalklab."""


class QwalkError(Exception):
    """Base class for all qwalklab errors."""


class DomainError(QwalkError):
    """An input is outside the mathematical domain of an operation."""


class NumericalError(QwalkError):
    """A numerical routine produced results outside its accuracy contract."""


class ConvergenceError(NumericalError):
    """An adaptive quadrature failed to converge within its node budget."""


class CapacityError(QwalkError):
    """A lattice window would grow beyond its configured maximum size."""


class FitError(QwalkError):
    """A curve fit received degenerate or out-of-domain data."""
