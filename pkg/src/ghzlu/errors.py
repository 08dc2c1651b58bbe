class GhzluError(Exception):
    """Base class for library errors."""


class InvalidStateError(GhzluError, ValueError):
    """Input amplitudes or Schmidt coefficients violate their invariants."""


class NotUnitaryError(GhzluError, ValueError):
    """A local factor is not unitary within tolerance."""


class NotGHZClassError(GhzluError, ValueError):
    """Operation is defined only on the GHZ SLOCC class (lambda0 * lambda4 != 0)."""


class DomainError(GhzluError, ValueError):
    """Input lies outside the applicability domain of an operation."""


class DecompositionError(GhzluError, ArithmeticError):
    """The Schmidt decomposition search failed; carries the residuals of every branch tried."""

    def __init__(self, message: str, residuals: dict[str, float]):
        super().__init__(f"{message} (residuals: {residuals})")
        self.residuals = residuals


class ConsistencyError(GhzluError, AssertionError):
    """Two independent routes to the same quantity disagree."""
