"""Exception types shared across the package."""


class ConelabError(Exception):
    """Base class for all package errors."""


class DomainError(ConelabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DimensionMismatch(ConelabError, ValueError):
    """A point or field does not match the expected dimension."""


class BudgetExceeded(ConelabError, ValueError):
    """A requested grid exceeds the configured point budget."""


class PreconditionError(ConelabError, ValueError):
    """A documented precondition of a pipeline stage does not hold."""


class ConesIntersect(PreconditionError):
    """Two cones required to meet only at the origin share a ray."""


class NormPossiblyInfinite(ConelabError, ArithmeticError):
    """The weighted modulus grows toward the truncation boundary."""


class SeedRejected(PreconditionError):
    """An entire seed function violates its growth bound at a sample."""


class SolverError(ConelabError, RuntimeError):
    """The constrained least-squares solver failed or went singular."""


class UnrepresentableArcSet(ConelabError, ValueError):
    """An arc-set operation left the finite closed/open-arc representation."""


class ConfigError(ConelabError, ValueError):
    """A scenario configuration file is malformed or inconsistent."""
