"""Exact symbolic checks for quantum fuzzy spheres and q-deformed differential calculi."""

from .freealg import NcElement, Presentation
from .report import ENGINE_VERSION as __version__
from .scalars import PoleError, Scalar

__all__ = ["Scalar", "PoleError", "Presentation", "NcElement", "__version__"]
