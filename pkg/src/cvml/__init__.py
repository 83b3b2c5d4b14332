"""Complex valued metric-like spaces and their neighbouring axiom systems."""

from .order import (
    DEFAULT_EPS,
    CVMLError,
    EvaluationError,
    InvalidInputError,
    RangeError,
    UnknownLabelError,
    abs_c,
    complex_abs_c,
    join,
    leq,
    lt_strict,
    modulus,
    precneq,
)
from .spaces import (
    AxiomClass,
    AxiomReport,
    DistanceFn,
    FiniteSpace,
    Violation,
    check_axioms,
    classify,
    exp_itheta_sum,
    i_max_mod,
    max_real,
    max_shift,
    one_plus_i_sum,
    sample_space,
    scaled_euclidean,
    user_matrix,
)
from .sequences import (
    SequenceSpec,
    alternating,
    check_cauchy,
    check_convergence,
    completely_separate,
    constant,
    converges_by_balls,
    find_limits,
    reciprocal_i,
)
from .topology import BallSpec, ball_contains, closure, diam_c, is_closed, limit_points, residual

__version__ = "0.1.0"
