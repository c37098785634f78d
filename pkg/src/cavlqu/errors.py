"""Exception types raised by cavlqu."""


class CavlquError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(CavlquError, ValueError):
    """Arguments that violate a documented precondition."""


class NumericalError(CavlquError, ArithmeticError):
    """A computation produced a value outside its mathematically allowed range."""


class NotHermitian(InvalidInput):
    pass


class NotPositive(NumericalError):
    pass


class NoConvergence(NumericalError):
    pass


class BadIndex(InvalidInput):
    pass


class BadDimension(InvalidInput):
    pass


class BadAmplitudes(InvalidInput):
    pass


class InvalidState(InvalidInput):
    """Raised when a matrix fails density-matrix validation."""


class NumericalNegative(NumericalError):
    pass


class OracleMismatch(NumericalError):
    """Closed-form LQU and the brute-force minimisation disagree."""
