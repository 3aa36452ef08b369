"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` (slash-separated,
stable across releases) next to the human-readable message, so command-line
consumers can branch on it without parsing prose.
"""

from __future__ import annotations


class EchelonError(ValueError):
    """Base class for all domain errors raised by this package."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class ValidationError(EchelonError):
    """A space, graph, or document failed structural validation."""


class MetricError(EchelonError):
    """A distance table violates a metric axiom.

    Codes: ``metric/symmetry``, ``metric/diagonal``, ``metric/positivity``,
    ``metric/triangle``, ``metric/shape``.
    """


class MorphismError(EchelonError):
    """A supplied point map is not the kind of morphism required."""


class DemandError(EchelonError):
    """A witness demand is malformed or refers to missing points."""


class CapExceeded(EchelonError):
    """A configured size or search cap was exceeded."""


class BudgetExceeded(EchelonError):
    """An exhaustive search would exceed its colouring budget."""
