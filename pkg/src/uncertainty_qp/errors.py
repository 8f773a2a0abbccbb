"""Exception types raised across the package."""


class UncertaintyQPError(Exception):
    """Base class for all package errors."""


class DimensionError(UncertaintyQPError, ValueError):
    """Invalid or mismatched Hilbert-space / coherence-vector dimension."""


class HermiticityError(UncertaintyQPError, ValueError):
    """A matrix that must be Hermitian is not, beyond tolerance."""


class DomainError(UncertaintyQPError, ValueError):
    """Input lies outside the domain of the operation (e.g. not a pure state)."""


class StateError(UncertaintyQPError, ValueError):
    """Matrix is not a valid density matrix."""


class SolverError(UncertaintyQPError, RuntimeError):
    """A solver failed to produce a trustworthy result."""
