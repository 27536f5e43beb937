class ConeCurveError(ValueError):
    """Base class for geometric and validation failures."""


class SurfaceError(ConeCurveError):
    pass


class CurveError(ConeCurveError):
    pass


class SurgeryError(ConeCurveError):
    pass


class PreconditionError(ConeCurveError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Shortest-path search hit its depth or expansion budget.

    Deliberately not a ConeCurveError: running out of budget says nothing
    about the geometry.
    """
