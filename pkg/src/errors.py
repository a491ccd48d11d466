#!/usr/bin/env python3
"""
Ququart Toolkit - Exceptions

Every error raised by the toolkit derives from ``QuquartError`` so the CLI
can map them onto exit codes in one place.  Most also derive from the
matching builtin so callers that only know ``ValueError`` still catch them.

Licensed under GPL v3
"""


class QuquartError(Exception):
    """Base class for all toolkit errors."""


class NormalizationError(QuquartError, ValueError):
    """Coefficients whose norm is too far from 1 to be auto-normalized."""


class DimensionError(QuquartError, ValueError):
    """An operation received a matrix or vector of the wrong size."""


class ConvergenceError(QuquartError, ArithmeticError):
    """The Hermitian eigen-solver failed to converge."""


class DomainError(QuquartError, ValueError):
    """A scalar argument lies outside the domain of a formula."""


class InvariantError(QuquartError, ValueError):
    """A density matrix violated Hermiticity, unit trace or positivity.

    ``invariant`` names the violated property (``hermitian``, ``trace``,
    ``positive``) so audits can report it.
    """

    def __init__(self, invariant: str, message: str):
        super().__init__(f"{invariant}: {message}")
        self.invariant = invariant


class ConfigError(QuquartError):
    """Malformed scenario configuration or command-line arguments."""
