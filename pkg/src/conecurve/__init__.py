"""Intrinsic convex polyhedral surfaces, curves on them and the cones they live on."""

from .config import Config
from .errors import ConeCurveError, CurveError, PreconditionError, SearchBudgetExceeded, SurfaceError, SurgeryError
from .surface import IntrinsicSurface, SurfacePoint, from_positions, validate_surface, vertex_curvature

__version__ = "0.1.0"
