"""Exception types shared across the package."""


class PargreedyError(Exception):
    """Base class for all library errors."""


class InputError(PargreedyError):
    """Malformed or inconsistent input data (bad ids, violated invariants)."""


class CapacityError(PargreedyError):
    """An exact exhaustive computation was refused because the instance
    exceeds the configured cap.  Never silently truncated."""


class UndefinedRatioError(InputError):
    """The optimum value is zero, so the greedy/optimal ratio is undefined."""
