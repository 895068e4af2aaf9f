"""Exception hierarchy shared across the package.

Every error carries a module-qualified ``code`` so the CLI can surface
failures uniformly (for example ``circuit.budget_exceeded``).  Resource-guard
errors (budgets, ceilings, matrix-size guards) subclass ResourceLimitError so
callers can map them to a common exit code.
"""

from __future__ import annotations


class AnnforgeError(Exception):
    """Base class for all package errors."""

    code = "annforge.error"


class FieldMismatchError(AnnforgeError):
    code = "field.mismatch"


class ParseError(AnnforgeError):
    code = "parse.error"


class CircuitError(AnnforgeError):
    code = "circuit.invalid"


class MissingAssignmentError(AnnforgeError):
    code = "poly.missing_assignment"


class SupportOverflowError(AnnforgeError):
    code = "encoding.support_overflow"


class ResourceLimitError(AnnforgeError):
    code = "limit.exceeded"


class BudgetExceededError(ResourceLimitError):
    code = "circuit.budget_exceeded"


class SearchSpaceTooLargeError(ResourceLimitError):
    code = "annihilator.search_space_too_large"


class MatrixTooLargeError(ResourceLimitError):
    code = "algebra.matrix_too_large"


class PointBudgetExceededError(ResourceLimitError):
    code = "pit.point_budget_exceeded"


class NotAnAnnihilatorError(AnnforgeError):
    code = "annihilator.not_an_annihilator"


class DecompositionMismatchError(AnnforgeError):
    code = "annihilator.decomposition_mismatch"


class SystemSatisfiableError(AnnforgeError):
    code = "ips.system_satisfiable"
