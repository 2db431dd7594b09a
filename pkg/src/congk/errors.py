"""Exception types shared across the package."""


class CongKError(Exception):
    """Base class."""


class InputError(CongKError, ValueError):
    """Malformed or out-of-range input."""


class BudgetExceeded(CongKError):
    """A computation would exceed the desk-scale limits."""


class InjectivityFails(CongKError):
    """The roots of unity do not embed into the residue field of a prime."""


class Unclassified(CongKError):
    """The boundary classification has no case for this input."""


class ConsistencyError(CongKError, AssertionError):
    """An internal cross-check failed.  Always a bug."""


class ConditionViolated(CongKError):
    """A precondition of a structural result does not hold for this input."""
