"""Exception types shared across the package."""


class StpermError(Exception):
    pass


class ValidationError(StpermError, ValueError):
    """Input data violates a structural invariant (group axioms, d^2 = 0, ...)."""


class ResourceLimitError(StpermError):
    """A configured size bound was exceeded."""


class UnsupportedError(StpermError, NotImplementedError):
    pass


class NotAPSubgroupError(StpermError, ValueError):
    pass


class RouteMismatchError(StpermError):
    """The group-theoretic and the section-graph verdicts disagree."""
