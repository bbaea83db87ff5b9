"""Exceptions shared across the package."""

from __future__ import annotations


class CapExceededError(RuntimeError):
    """A computation was asked to run beyond its default size cap."""


class AlgebraAxiomError(ValueError):
    """Structure constants violate commutativity, unitality or associativity."""


class InconsistencyError(AssertionError):
    """Two independent computations of the same quantity disagree."""


class NotNormPreservingError(ValueError):
    pass
