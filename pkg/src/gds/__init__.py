"""Generic direct summands of tensor products of simple, Weyl and dual Weyl modules
for reductive groups and quantum groups of types A1 and A2."""
from .alcove import EllContext
from .core_lie import root_system
from .errors import GdsError

__version__ = "0.1.0"

__all__ = ["EllContext", "GdsError", "root_system", "__version__"]
