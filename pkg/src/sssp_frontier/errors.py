"""Exception types raised across the toolkit."""


class FrontierError(Exception):
    """Base class for all toolkit errors."""


class InvalidParams(FrontierError, ValueError):
    pass


class MissingPathLength(FrontierError, ValueError):
    pass


class DuplicateModel(FrontierError, KeyError):
    pass


class UnknownModel(FrontierError, KeyError):
    pass


class EmptyGrid(FrontierError, ValueError):
    pass


class MissingModelKind(FrontierError, ValueError):
    pass


class InvalidRange(FrontierError, ValueError):
    pass


class TooDense(FrontierError, ValueError):
    pass


class InvalidWeightRange(FrontierError, ValueError):
    pass


class InvalidSource(FrontierError, IndexError):
    pass


class InsufficientData(FrontierError, ValueError):
    pass


class ScenarioParseError(FrontierError, ValueError):
    pass
