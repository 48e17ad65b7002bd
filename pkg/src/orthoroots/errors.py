"""Exception types shared across the package."""


class ConfigError(ValueError):
    """An unsupported or malformed system type or option."""


class UsageError(ValueError):
    """A call whose arguments violate the operation's preconditions."""


class UnsupportedTypeError(UsageError):
    """An operation that only makes sense for another family of root systems."""


class InvariantViolation(RuntimeError):
    """A mathematical invariant that must always hold was found broken."""
