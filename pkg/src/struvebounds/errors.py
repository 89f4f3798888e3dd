"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class StruveError(Exception):
    """Base class for all library errors."""


class DomainError(StruveError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class HypothesisError(DomainError):
    """An inequality was requested outside the parameter range it is proved for."""


class ConvergenceError(StruveError, ArithmeticError):
    """A series or quadrature failed to reach its tolerance within its caps."""


class StruveOverflowError(StruveError, OverflowError):
    """The result exceeds the largest representable double."""
