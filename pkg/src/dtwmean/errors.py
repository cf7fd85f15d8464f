"""Exception types shared across the package."""


class DtwMeanError(Exception):
    """Base class for all library errors."""


class DomainError(DtwMeanError, ValueError):
    """Invalid input: malformed sequences, bad parameters, mismatched dimensions."""


class CapacityError(DtwMeanError, RuntimeError):
    """A desk-scale enumeration guard was exceeded."""


def require(condition: bool, message: str) -> None:
    if not condition:
        raise DomainError(message)
