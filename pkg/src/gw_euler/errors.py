"""Exception hierarchy shared by all modules.

Every domain failure derives from GwError so callers (and the CLI) can
distinguish domain errors from usage errors.
"""


class GwError(Exception):
    """Base class for all domain errors."""


class CharTwo(GwError):
    """Base field has characteristic 2 (unsupported everywhere)."""


class NotSquarefree(GwError):
    """Extension modulus has a repeated factor; the trace pairing degenerates."""


class ZeroEntry(GwError):
    """A rank-1 generator <0> was requested (degenerate form)."""


class UnsupportedField(GwError):
    """The requested invariant or predicate is not defined over this field."""


class FactorBudgetExceeded(GwError):
    """Integer factorization exceeded its budget during canonicalization."""


class Degenerate(GwError):
    """A bilinear form that must be nondegenerate has determinant zero."""


class NonIsolatedZeros(GwError):
    """The zero scheme is not finite (quotient algebra is infinite dimensional)."""


class BudgetExceeded(GwError):
    """Buchberger reduction exceeded the configured step budget."""


class NotSimple(GwError):
    """Jacobian determinant vanishes at the point; the zero is not simple."""


class NotTriangular(GwError):
    """The system is not triangular after the lex Groebner computation."""


class FactorDegreeTooHigh(GwError):
    """A univariate irreducible factor exceeds the built-in factoring range."""

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class SingularIndex(GwError):
    """The local index matrix is singular (non-simple zero)."""


class ChartDegenerate(GwError):
    """Some solution escaped the chart; the quotient dimension is off."""
