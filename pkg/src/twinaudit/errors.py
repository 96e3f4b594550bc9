"""Exception hierarchy shared by the library and the CLI."""


class TwinAuditError(Exception):
    """Base class for all package errors."""


class DomainError(TwinAuditError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class InsufficientBasePrimesError(DomainError):
    """The base primes handed to a segment sieve do not reach sqrt(hi - 1)."""

    def __init__(self, bound: int, missing: int):
        self.bound = bound
        self.missing = missing
        super().__init__(
            f"base primes must include every prime <= {bound}; {missing} missing"
        )


class CacheError(TwinAuditError):
    """The on-disk window cache is unreadable or disagrees with a recomputation."""


class FixtureError(TwinAuditError):
    """The golden table fixture is missing or malformed."""
