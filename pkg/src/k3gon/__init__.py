"""Exact lattice and quadratic-form computations for the gonality of curves on K3 surfaces."""

from .errors import (
    EnumerationError,
    HypothesisViolation,
    InternalInvariantViolation,
    K3GonError,
    UncertifiedLattice,
)
from .invariants import (
    Params,
    brill_noether_number,
    clifford_of_divisor,
    exact_sqrt,
    expected_gonality,
    generic_clifford_index,
    generic_gonality,
    gonal_locus_dim,
    hilbert_expected_dim,
    is_perfect_square,
    secant_expected_dim,
)
from .k3lattice import C, H, ZERO, DivClass, K3Lattice, c_is_ample, intersect, is_effective, is_q_effective, self_int
from .qform import BinaryQuadForm, Reason, ReprResult, Verdict, discriminant, q_value, represents, represents_zero
from .verifier import (
    AlphaReport,
    ConstraintA,
    HypothesisReport,
    bn_divisor_solutions,
    check_very_ample_order,
    compute_alpha,
    enumerate_A,
    f_value,
    h1_normal_vanishes,
    in_A,
    mori_exists,
    rathmann_exists,
    theorem1_applicable,
    theorem3_applicable,
)

__version__ = "0.1.0"
