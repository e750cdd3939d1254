"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parse errors exit with 1, invariant
violations with 2, exhausted resource budgets with 3.
"""

import os


class RtlError(Exception):
    """Base class for every error raised by this package."""


class ParseError(RtlError, ValueError):
    """Malformed textual or JSON input."""


class AlphabetError(RtlError, ValueError):
    """Unknown letter, or values built over different alphabets."""


class DomainMismatch(RtlError, ValueError):
    """Binary automaton operation on incompatible symbol domains."""


class InvariantViolation(RtlError, ValueError):
    """A structural invariant does not hold (e.g. a language is not trace-closed)."""


class BudgetExceeded(RtlError, RuntimeError):
    """A construction exceeded its state budget."""

    def __init__(self, what, budget):
        super().__init__(f"{what}: state budget of {budget} exceeded")
        self.what = what
        self.budget = budget


class UnknownLabel(RtlError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown label"


class ReachabilityNotAutomatic(UnknownLabel):
    """The formula uses `*` but the presentation carries no reachability relation."""


def default_budget():
    return int(os.environ.get("RTLGRAPHS_STATE_BUDGET", 10**6))


MAX_LETTERS = int(os.environ.get("RTLGRAPHS_MAX_LETTERS", 10))
