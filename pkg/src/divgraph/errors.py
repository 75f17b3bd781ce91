"""Error taxonomy shared across the package.

The CLI maps these onto its exit-code convention: bad input is exit 1,
an honest algorithmic miss (attempts exhausted, best-effort stage failure,
search budget blown) is exit 2.  ``InternalInvariantError`` signals a bug,
never an expected outcome, and is allowed to escape as a crash.
"""


class DivgraphError(Exception):
    """Base class for all package errors."""


class InputError(DivgraphError):
    """Invalid argument, malformed structure, or violated precondition."""


class SearchFailure(DivgraphError):
    """Honest failure of a best-effort or randomized procedure."""


class AttemptsExhausted(SearchFailure):
    """All labeling attempts of the randomized cycle finder failed."""

    def __init__(self, attempts: int):
        super().__init__(f"no valid labeling found in {attempts} attempts")
        self.attempts = attempts
        self.failures = attempts


class StageFailure(SearchFailure):
    """A pipeline stage failed in best-effort mode; names the stage."""

    def __init__(self, stage: str, reason: str):
        super().__init__(f"{stage}: {reason}")
        self.stage = stage
        self.reason = reason


class BudgetExceeded(SearchFailure):
    """A bounded exhaustive search ran out of its node budget."""


class InternalInvariantError(DivgraphError):
    """A guaranteed invariant failed; indicates an implementation bug."""
