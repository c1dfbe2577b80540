"""Exception hierarchy.

Everything raised on purpose derives from :class:`CompindexError`. The two
intermediate classes split user-correctable input problems from numerical
dead ends; the command line maps them to exit codes 1 and 2.
"""


class CompindexError(Exception):
    """Base class for all library errors."""


class InputError(CompindexError, ValueError):
    """Input failed validation (bad shape, bad value, bad config)."""


class NumericalError(CompindexError, ArithmeticError):
    """The computation is undefined or did not converge for this input."""


class ShapeError(InputError):
    pass


class ValidationError(InputError):
    pass


class ParseError(InputError):
    pass


class MappingError(InputError):
    pass


class DomainError(InputError):
    pass


class InsufficientObjectsError(InputError):
    pass


class DegenerateColumnError(NumericalError):
    pass


class DegenerateWeightsError(NumericalError):
    pass


class ConvergenceError(NumericalError):
    pass
