"""Exception hierarchy shared by every module.

The CLI maps :class:`UsageError` to exit code 2 and :class:`CapabilityError`
(limits, budgets) to exit code 1.
"""


class OddHolesError(Exception):
    pass


class UsageError(OddHolesError, ValueError):
    """Bad input: out-of-range vertex, violated precondition, malformed data."""


class CapabilityError(OddHolesError):
    """The request is well-formed but exceeds a configured desk-scale limit."""


class BudgetExhausted(CapabilityError):
    """A search ran out of its node-expansion budget before finishing."""

    def __init__(self, message: str, expansions: int = 0):
        super().__init__(message)
        self.expansions = expansions
