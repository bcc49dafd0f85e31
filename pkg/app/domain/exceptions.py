"""Domain-specific exceptions."""


class DomainError(Exception):
    """Base exception for all domain-related errors."""
    pass


class ValidationError(DomainError):
    """Raised when domain validation fails."""
    pass


class DegenerateStatisticsError(DomainError):
    """Raised when published statistics leave a quantity unbounded (t = 0)."""
    pass


class InconsistentSummaryError(DomainError):
    """Raised when a t-statistic and its mean difference disagree in sign."""
    pass


class SampleSizeError(DomainError):
    """Raised when a procedure receives too few observations."""
    pass


class SingularFitError(DomainError):
    """Raised when a least-squares design matrix is rank deficient."""
    pass


class UndefinedFractionError(DomainError):
    """Raised when a positivity fraction is requested for p = n = 0."""
    pass


class UndefinedCorrelationError(DomainError):
    """Raised when a correlation involves a zero-variance column."""
    pass


class DegenerateSplitError(DomainError):
    """Raised when a dichotomized group is too small for a pooled t-test."""
    pass


class ConvergenceError(DomainError):
    """Raised when an iterative special-function evaluation does not converge."""
    pass
