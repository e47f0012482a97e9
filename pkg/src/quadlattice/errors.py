"""Exception types shared across the package."""


class QuadLatticeError(Exception):
    """Base class for all library errors."""


class NotSquareFree(QuadLatticeError):
    """The field parameter d must be a square-free integer other than 0, 1."""


class NotPrime(QuadLatticeError):
    """The conductor generator f must be a prime number >= 2."""


class ZeroIdeal(QuadLatticeError):
    """All supplied generators were zero."""


class RingMismatch(QuadLatticeError):
    """Operands live in different rings (the order vs the maximal order)."""


class NotPrimary(QuadLatticeError):
    """The ideal is not primary for the conductor."""


class IsFO(QuadLatticeError):
    """The operation is undefined for the ideal f*O."""


class NotNested(QuadLatticeError):
    """Expected a strict containment J < I."""


class NotBasicElement(QuadLatticeError):
    """The element does not generate a basic conductor-primary ideal."""


class BudgetExceeded(QuadLatticeError):
    """Enumeration would examine more candidates than the configured cap."""


class IterationCapExceeded(QuadLatticeError):
    """An iterative search hit its iteration cap."""
