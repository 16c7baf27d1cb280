"""Vanishing cohomology and monodromy of Thom-Sebastiani sums ``f(x) + g(y)``."""

__version__ = "0.1.0"

from .abgroup import FgAbGroup, direct_sum, from_presentation, snf, tensor, tor
from .atoms import AtomDef, AtomRegistry, load_atom, pham, pow, quad
from .expr import evaluate, parse, split_disjoint
from .graded import (
    CycloFactorization,
    GradedPiece,
    VanishingData,
    char_poly,
    equal,
    join,
    suspend,
    total_rank,
    zeta,
)
from .oracle import (
    check_isolated,
    groebner_basis,
    milnor_groebner,
    pham_enumerate,
    tensor_tor_resolution,
)
from .poly import Poly
