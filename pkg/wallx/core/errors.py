from __future__ import annotations


class WallxError(ValueError):
    """Base error. ``code`` is the machine-readable identifier reported by the CLI."""

    code = "error"

    def __init__(self, message: str, *, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class WireError(WallxError):
    code = "malformed-rational"


class DimensionMismatchError(WallxError):
    code = "dimension-mismatch"


class NotDominantError(WallxError):
    code = "not-dominant"


class NotInPolytopeError(WallxError):
    code = "not-in-polytope"


class UnboundedPolytopeError(WallxError):
    code = "unbounded-polytope"


class DecompositionError(WallxError):
    code = "decomposition-failed"


class NonGenericMuError(WallxError):
    code = "non-generic-mu"


class ShapeMismatchError(WallxError):
    code = "shape-mismatch"


class UnknownSuiteError(WallxError):
    code = "unknown-suite"
