"""Exception types shared across the toolkit."""


class FuncspaceError(Exception):
    """Base class for all toolkit errors."""


class TrivialSpaceError(FuncspaceError):
    """Raised when a parameter combination makes the target space trivial ({0})."""


class DivergenceError(FuncspaceError):
    """Raised when an integral functional fails its decay certificate."""


class HypothesisViolationError(FuncspaceError):
    """Raised when check/sweep parameters violate the registered hypotheses."""


class DegenerateFitError(FuncspaceError):
    """Raised when a rate fit is requested on too few points."""


class UnknownIdError(FuncspaceError):
    """Raised for unknown check, sweep or family identifiers."""
