"""Exception hierarchy shared by all modules."""


class DickeError(Exception):
    """Base class for every error raised by this package."""


class InvalidInputError(DickeError, ValueError):
    pass


class ParameterBoundError(InvalidInputError):
    pass


class NoSteadyStateError(DickeError):
    pass


class DegenerateSteadyStateError(DickeError):
    def __init__(self, message, gap=None):
        super().__init__(message)
        self.gap = gap


class IntegrationError(DickeError):
    pass


class PhaseConventionError(DickeError):
    """State has a non-negligible <S_y>, i.e. complex coherences."""


class NotApplicableError(DickeError):
    pass


class ConsistencyError(DickeError):
    """Two independent routes to the same quantity disagree."""
