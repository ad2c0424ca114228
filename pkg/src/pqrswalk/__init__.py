"""Quantum walks on the line through the PQRS matrix basis: exact evolution,
closed-form path sums and moments, the weak-limit law, and absorption at 0."""

from .absorption import (
    AbsorptionResult,
    AbsorptionSpec,
    Divergent,
    GenFunEval,
    HittingMoment,
    HittingSeries,
    absorption_prob,
    conditional_hitting_moment,
    conjecture_rhs,
    first_hit_prob,
    first_hit_probs,
    genfun_finite_hadamard,
    genfun_r1_jn,
    hitting_series,
    lambda_roots,
    parseval_prob,
    semi_infinite_closed,
    taylor_coefficients,
)
from .coin import (
    STATE_L,
    STATE_R,
    STATE_SYM,
    BasisCombo,
    PQRSBasis,
    QubitState,
    UnitaryCoin,
    WalkType,
    basis_product,
    expand,
    hadamard,
    make_coin,
    named_coin,
    parse_coin,
    parse_state,
    pqrs,
)
from .errors import (
    CoinHasZeroEntry,
    NoConvergence,
    NormDrift,
    NotUnitary,
    OutOfRange,
    ParamOutOfRange,
    SingularPoint,
    TooLarge,
    TypeMismatch,
    UnsupportedCoin,
    WalkError,
    ZeroDenominator,
)
from .limit import (
    JacobiParams,
    LimitDensity,
    cdf,
    cdf_interval,
    density,
    integrate,
    jacobi,
    limit_mean,
    limit_sd,
    limit_second_moment,
    make_limit_density,
)
from .pathsum import (
    MomentContext,
    PathSplit,
    classify_symmetry,
    moment_closed_form,
    moment_context,
    prob_at,
    xi,
    xi_bruteforce,
    xi_closed_form,
)
from .walk import AmplitudeField, Distribution, distribution, empirical_moment, evolve, step

__version__ = "0.1.0"
