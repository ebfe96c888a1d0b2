"""Exception hierarchy shared by all modules."""


class PeakingError(Exception):
    """Base class for errors raised by this package."""


class DomainError(PeakingError, ValueError):
    """An argument lies outside the domain of the operation."""


class NumericInputError(PeakingError, ValueError):
    """Input contains NaN or infinite entries."""


class NotPSDError(DomainError):
    """Matrix has eigenvalues that are too negative to be rounding noise."""


class DegenerateDataError(PeakingError, ValueError):
    """Data carries no usable variance."""


class DegenerateLabelsError(PeakingError, ValueError):
    """A class required by the fit has no objects."""


class RegimeError(DomainError):
    """Approximation evaluated outside the regime where it is defined."""


class IngestionError(PeakingError, ValueError):
    """A dataset file could not be parsed into a binary labeled dataset."""
