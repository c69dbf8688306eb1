"""Bialynicki-Birula cells of Hilbert schemes of points, computed exactly.

Decide whether a zero-dimensional ideal flows to the monomial ideal of a
staircase under a one-parameter torus, compute torus limits, and check the
structural statements (boundedness, Delta-monicity, x_i^n membership,
triangularity, Hilbert-Chow fibers) on concrete instances.
"""

from .bbcell import (
    BBResult,
    BoundednessCertificate,
    DivisionResult,
    InitialStaircaseResult,
    MonicResult,
    bb_membership,
    boundedness,
    delta_monic,
    division,
    flat_limit,
    in_coeff_ideal_dual,
    in_coeff_ideals,
    initial_staircase,
    oracle_bb,
    xn_membership_check,
)
from .chow import chow_point, chow_points, fiber_check, linearized_determinant, triangularity_check
from .coeff import QQ, CoeffIdeal, DualNumber, DualRing
from .errors import (
    BBHilbError,
    BoundNotVerified,
    DimensionMismatch,
    DivisionByNonUnit,
    InternalBoxOverflow,
    InvariantViolation,
    IterationLimit,
    LengthMismatch,
    MixedRings,
    NotBounded,
    NotDownwardClosed,
    NotZeroDimensional,
    ParseError,
    UndeterminedPolarity,
    ZeroPolynomial,
)
from .gb import Ideal, degeneration_oracle, min_poly, normal_form
from .order import Cmp, QHOrder, SignedOrder, canonical_pair, initial_form, parse_order
from .poly import Polynomial, parse_polynomial, torus_act
from .staircase import StandardSet, enumerate_standard_sets, outer_corners, parse_standard_set

__version__ = "0.1.0"
