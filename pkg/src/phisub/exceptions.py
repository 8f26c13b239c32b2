"""Exception types shared across the package.

Plain ``ValueError`` is used for ordinary domain/precondition violations;
the classes here mark *numeric* failures that callers (and the CLI exit-code
contract) need to tell apart from bad input.
"""


class NumericError(Exception):
    """A computation could not be completed to the requested accuracy."""


class BracketDivergenceError(NumericError):
    """The conjugate supremum could not be bracketed: the objective
    x*y - f(x) keeps increasing, i.e. f is not superlinear."""


class NotPhiSubgaussianError(NumericError):
    """The norm supremum keeps growing with lambda: the variable has no
    finite tau norm for the requested exponent."""


class QuadratureError(NumericError):
    """Adaptive quadrature failed to reach the required error estimate."""
