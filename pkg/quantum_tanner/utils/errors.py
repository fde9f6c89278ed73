"""
Exception types raised by quantum_tanner.
"""


class QuantumTannerError(Exception):
    """Base class for every library-specific failure."""


class CapExceededError(QuantumTannerError, ValueError):
    """An exhaustive enumeration, table or sampling budget would be exceeded."""


class RankDeficiencyError(QuantumTannerError, ValueError):
    """A matrix that must have full row rank does not."""


class InconsistentSyndromeError(QuantumTannerError, ValueError):
    """A syndrome (or a local slice of one) is produced by no error."""


class ConstructionError(QuantumTannerError):
    """An invariant that holds for every valid construction was violated."""
