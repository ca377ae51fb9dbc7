"""Exception types shared across the package.

Each maps to a CLI exit code (see cli.py): malformed input -> 3,
infeasible / invalid data -> 2, exhausted budgets or diverging
iterations -> 4.
"""

from __future__ import annotations


class CoverkitError(Exception):
    """Base class for all package-specific errors."""


class MalformedInputError(CoverkitError):
    """Input violates a structural contract (bad ids, ranges, file syntax)."""


class InfeasibleError(CoverkitError):
    """No complete cover / hitting set exists for the instance.

    Attributes
    ----------
    achieved:
        Best objective value reachable (e.g. the maximum number of
        coverable elements) at the point infeasibility was detected.
    """

    def __init__(self, message: str, achieved: int | None = None):
        super().__init__(message)
        self.achieved = achieved


class DegenerateInputError(CoverkitError):
    """Point coordinates violate general position (tied x or y values)."""


class BudgetExceededError(CoverkitError):
    """An exact oracle exceeded its enumeration or time budget."""


class NetSampleFailureError(CoverkitError):
    """Secondary-net resampling failed max_retries times for one rectangle."""


class BgDivergenceError(CoverkitError):
    """Iterative reweighting exceeded its round bound for every size guess.

    Attributes
    ----------
    log:
        Per-round iteration records accumulated before divergence.
    """

    def __init__(self, message: str, log: list | None = None):
        super().__init__(message)
        self.log = log if log is not None else []
