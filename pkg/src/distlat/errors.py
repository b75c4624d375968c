"""Exception hierarchy shared by all modules.

The CLI maps these onto exit statuses: domain errors exit 1, format errors
exit 2 and invariant (verification) failures exit 3.
"""


class DistlatError(Exception):
    pass


class DomainError(DistlatError, ValueError):
    """Input is well-formed but outside the domain of the operation."""


class ContractError(DomainError):
    """A documented precondition does not hold."""


class NotALatticeError(DomainError):
    pass


class EmptyLatticeError(DomainError):
    pass


class ResourceGuardError(DomainError):
    """Refusing an enumeration that would be too large to finish."""


class FormatError(DistlatError, ValueError):
    """Malformed text input."""


class InvariantError(DistlatError, AssertionError):
    """A cross-check failed. Indicates a bug, not bad input."""
