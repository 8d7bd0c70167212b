"""Exact convolution algebras of finite ample groupoids with
coefficients in a sheaf of unital algebras, skew inverse semigroup
rings, induced modules, and machine checks of the structural theorems
relating them."""

from .convalg import ConvAlgebra, build_conv_algebra
from .errors import (CapExceeded, CheckFailure, GsheafError, InputError)
from .exactalg import FDAlgebra, AlgebraModule, Subspace
from .fields import GF, QQ, Field
from .groupoid import FiniteGroupoid
from .isgring import (FiniteInverseSemigroup, PartialGroupAction,
                      SpaceAction, SpectralRingAction)
from .sheaf import GSheafOfAlgebras, constant_sheaf

__version__ = "0.1.0"

__all__ = [
    "AlgebraModule", "CapExceeded", "CheckFailure", "ConvAlgebra",
    "FDAlgebra", "Field", "FiniteGroupoid", "FiniteInverseSemigroup",
    "GF", "GSheafOfAlgebras", "GsheafError", "InputError",
    "PartialGroupAction", "QQ", "SpaceAction", "SpectralRingAction",
    "Subspace", "build_conv_algebra", "constant_sheaf", "__version__",
]
