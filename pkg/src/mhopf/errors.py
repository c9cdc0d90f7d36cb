"""Error types shared across the package.

Mathematical failures of checked laws are reported as check results with
witnesses, never as exceptions.  Exceptions are reserved for structural
misuse: evaluating a table outside its declared window, asking a structure
for a capability it does not carry, or feeding malformed data.
"""


class MhopfError(Exception):
    pass


class WindowError(MhopfError):
    """A linear map or multiplier was evaluated outside its declared window."""


class CapabilityError(MhopfError):
    """The structure does not carry the capability needed for this operation."""


class StructuralError(MhopfError):
    """Malformed input data (bad tokens, non-idempotent projector, ...)."""


class NoLocalUnitError(MhopfError):
    """No local unit exists for the requested elements in the searched span."""
