"""Exception hierarchy shared by every module.

Each class names the guard that tripped; the CLI maps all of them to exit
code 3.
"""


class PicardTauError(Exception):
    """Base class for numerical and domain failures."""


class DomainError(PicardTauError, ValueError):
    """Parameter outside the supported domain (e.g. t not in (0, 1))."""


class NonPositiveInput(PicardTauError, ValueError):
    pass


class ConvergenceFailure(PicardTauError, ArithmeticError):
    pass


class QuadratureFailure(PicardTauError, ArithmeticError):
    pass


class PoleProximity(PicardTauError, ArithmeticError):
    """Evaluation point too close to a zero of a denominator theta function."""


class SingularConfiguration(PicardTauError, ValueError):
    """q sits on one of the fixed singular loci 0, 1, t of Painleve VI."""


class DegenerateShift(PicardTauError, ArithmeticError):
    pass


class NonPositiveArgument(PicardTauError, ArithmeticError):
    """The Toda bracket vanishes or changes sign on the grid."""

    def __init__(self, message, m=None, t=None):
        super().__init__(message)
        self.m = m
        self.t = t


class StencilTooCoarse(PicardTauError, ValueError):
    pass


class CrossCheckFailure(PicardTauError, AssertionError):
    """Two independent formulas for the same quantity disagree."""
