"""Exception types shared across the package."""


class K3GonError(Exception):
    """Base class for all errors raised by k3gon."""


class HypothesisViolation(K3GonError):
    """A caller demanded the numeric hypotheses of the gonality theorem and they fail."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InternalInvariantViolation(K3GonError):
    """A value guaranteed by the theory was contradicted by the computation.

    This always indicates a bug (or a counterexample worth reporting), never bad input.
    """


class UncertifiedLattice(K3GonError):
    """Effectiveness tests were requested on a lattice lacking its certificates."""


class EnumerationError(K3GonError, ValueError):
    """Parameters violate the precondition that makes an enumeration finite."""
