"""Exception hierarchy shared by all padicdyn modules."""


class PadicDynError(Exception):
    """Base class for all library errors."""


class SpecMismatch(PadicDynError):
    """Operands belong to different field specifications."""


class DivisionByZero(PadicDynError):
    """Division by zero, or by a value with no certified nonzero digit."""


class NegativeValuation(PadicDynError):
    """A residue reduction was requested for a non-integral element."""


class ZeroResidue(PadicDynError):
    """The zero residue has no Teichmueller lift."""


class NotAUnit(PadicDynError):
    """Operation requires valuation exactly zero."""


class NotASimpleRoot(PadicDynError):
    """Hensel lifting requires a simple root of the reduced polynomial."""


class ResidueNotASolution(PadicDynError):
    """The starting residue point does not solve the reduced system."""


class SingularJacobian(PadicDynError):
    """Newton lifting requires a Jacobian that is invertible mod p."""


class SingularMatrix(PadicDynError):
    """A matrix that had to be invertible was not."""


class NoConvergence(PadicDynError):
    """An iterative lift failed to stabilise within its iteration budget."""


class DegreeOverflow(PadicDynError):
    """A symbolic composition exceeded the configured degree budget."""


class NonIntegralCoefficient(PadicDynError):
    """Reduction mod p requires all coefficients to lie in the integer ring."""


class DegenerateReduction(PadicDynError):
    """The reduced map is no longer invertible (or a form degenerated)."""


class BudgetExceeded(PadicDynError):
    """An enumeration would exceed the configured point budget."""


class ParseError(PadicDynError):
    """A map description document could not be parsed."""


class NoGoodPrime(PadicDynError):
    """No candidate prime yields an admissible reduction."""


class NotStabilized(PadicDynError):
    """The residue-level period spectra did not stabilise."""
