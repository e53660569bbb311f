"""Structured error types raised by the engines."""


class GdsError(Exception):
    """Base class; ``name`` is the identifier printed by the CLI."""

    name = "error"


class InvalidRootError(GdsError):
    name = "invalid-root"


class UnsupportedEllError(GdsError):
    name = "unsupported-ell"


class DominanceError(GdsError):
    name = "dominance"


class EngineScopeError(GdsError):
    name = "engine-scope"


class RangeError(GdsError):
    name = "range"


class InvarianceError(GdsError):
    name = "invariance"


class CaseError(GdsError):
    name = "case"


class AlcoveError(GdsError):
    name = "alcove"


class BlockError(GdsError):
    name = "block"


class ParityError(GdsError):
    name = "parity"


class StructureError(GdsError):
    name = "structure"


class ScopeError(GdsError):
    name = "scope"


class RegionError(GdsError):
    name = "region"


class DataIntegrityError(GdsError):
    name = "data-integrity"


class ResourceError(GdsError):
    name = "resource"


class RootSystemMismatch(GdsError):
    name = "type-mismatch"
