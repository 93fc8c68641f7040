"""Exact Lie-lattice computations behind the Rost invariant restricted to the center."""

from .center_lattice import CenterPresentation, CocharacterMap, center, vanish_criterion, zmap
from .engine import (
    FormalCupExpression,
    PairingSpec,
    TheoremVerdict,
    classify_f2_form,
    cup_pairing,
    normalize,
    restriction_composition,
    theorem_verdict,
)
from .lattice import (
    FiniteAbelianGroup,
    IntegerMatrix,
    RationalVector,
    SmithDecomposition,
    lattice_quotient,
    smith_normal_form,
    solve_rational,
)
from .reduction import GPrimeDecomposition, TitsIndex, check_condition, g_prime, rost_multiplier
from .root_system import (
    Root,
    RootSystem,
    SystemType,
    build,
    delta_c,
    delta_r,
    dual,
    weight_in_root_lattice,
)

__version__ = "0.1.0"
