"""Exception hierarchy shared by all modules."""


class GsheafError(Exception):
    """Base class for everything raised on purpose by this package."""


class InputError(GsheafError):
    """Malformed or axiom-violating input data."""


class AlgebraError(InputError):
    """Structural misuse of an algebra, module, or subspace."""


class CapExceeded(GsheafError):
    """An enumeration or budget cap would be exceeded."""


class CheckFailure(GsheafError):
    """A mathematical identity this package promises failed to hold.

    Raised only when the implementation itself is wrong about verified
    structure (never for ordinary bad input), so a user seeing this has
    found a bug.
    """
