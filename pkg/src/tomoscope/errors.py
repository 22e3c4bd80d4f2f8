"""Exception hierarchy shared by every tomoscope module."""


class TomoscopeError(Exception):
    """Base class for all library errors."""


class DegenerateInputError(TomoscopeError, ValueError):
    pass


class InvalidBodySpecError(TomoscopeError, ValueError):
    pass


class EmptySectionError(TomoscopeError):
    """The cutting plane misses the interior of the body (or only grazes it)."""


class IllConditionedError(TomoscopeError):
    pass


class DegenerateAxisError(TomoscopeError):
    pass


class PointOutsideBodyError(TomoscopeError):
    pass


class ConfigurationInvalidError(TomoscopeError):
    pass


class MissingLinesError(TomoscopeError):
    pass


class NonUniqueDiameterError(TomoscopeError):
    def __init__(self, message, segments=()):
        super().__init__(message)
        self.segments = list(segments)
