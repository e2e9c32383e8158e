"""Exception hierarchy shared by every teamlogic module."""

from __future__ import annotations


class TeamLogicError(Exception):
    """Base class for all library errors."""


class FormulaSyntaxError(TeamLogicError, ValueError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        self.position = position
        self.expected = tuple(expected)
        detail = f"{message} at position {position}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


class FragmentViolation(TeamLogicError):
    """Raised when a formula is not a well-formed formula of a fragment.

    ``violations`` holds the structured reports produced by
    :func:`teamlogic.formula.fragment_check`.
    """

    def __init__(self, fragment, violations):
        self.fragment = fragment
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"not a {fragment.value} formula: {lines}")


class UnsupportedConnective(TeamLogicError):
    pass


class ScopeMismatch(TeamLogicError):
    pass


class ScopeCapExceeded(TeamLogicError):
    def __init__(self, size: int, cap: int, kind: str):
        self.size = size
        self.cap = cap
        self.kind = kind
        env = "TEAMLOGIC_FAMILY_CAP" if kind == "family" else "TEAMLOGIC_EVAL_CAP"
        super().__init__(
            f"scope of {size} variables exceeds the {kind} cap of {cap}; "
            f"raise it with --{kind}-cap or {env} if the query is small enough"
        )


class NotSubteam(TeamLogicError):
    pass


class ValuationNotSupporting(TeamLogicError):
    pass


class InconsistentInput(TeamLogicError):
    pass


class BudgetExceeded(TeamLogicError):
    pass


class InternalAssertionFailure(TeamLogicError, AssertionError):
    """A checked invariant failed; this always indicates a bug."""
