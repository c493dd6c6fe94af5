"""Operator norms of non-negative matrices on sequence spaces, and when decreasing inputs suffice."""

from .conditions import (
    CHECKERS,
    ConditionReport,
    NotApplicableError,
    check_c12,
    check_c13,
    check_c31,
    check_c41,
    check_c41star,
    check_c44,
    check_c410,
    check_c410star,
    check_c411,
    check_c412,
    implication_suite,
)
from .estimators import DecreasingRearrangement, OperatorNorm
from .matrices import (
    MatrixFamily,
    binomial_weights,
    cesaro,
    counterexample_l1,
    counterexample_l2,
    counterexample_linf,
    gamma_matrix,
    hilbert,
    is_summability,
    norlund,
    weighted_mean,
)
from .norms import NormEstimate, grid_oracle, norm_estimate, truncation_sweep
from .rearrangement import (
    BlockForm,
    construct_R_member,
    enumerate_R_union,
    is_in_R_gamma_lambda,
    make_Bx_decreasing,
)
from .spaces import SpaceSpec, WeightSeq, decreasing_rearrangement, space_norm

__version__ = "0.1.0"
