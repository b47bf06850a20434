"""Exact rearrangement-invariant analysis of composition operators.

Measure spaces, step functions and atom sequences, non-increasing
rearrangements, a catalog of function-space norms, composition symbols with
exact preimage analytics, and Cesaro/maximal averaging — all in rational
arithmetic wherever the quantities are rational.
"""

from .ergodic import (
    CesaroTrajectory,
    Decomposition,
    ErgodicReport,
    apply,
    cesaro,
    cesaro_schedule,
    convergence_report,
    decomposition_check,
    iterate_apply,
    maximal_truncated,
    permutation_limit,
    spec_label,
    weak_type_ratio,
)
from .examples import EXAMPLE_IDS, ExampleCheck, ExampleRun, run_example
from .num import INF, NEG_INF, Real, as_real, fmt_real, is_finite, json_real, to_float
from .properties import PROPERTIES, PropertyResult, SuiteResult, verify_suite
from .rearrange import (
    dilate,
    distribution_at,
    equimeasurable,
    hardy_integral,
    hardy_littlewood_pair,
    hlp_leq,
    is_acr,
    is_rearranged,
    rearrangement,
)
from .space import (
    AtomicSet,
    IntervalSet,
    MeasureSpace,
    atomic_finite,
    atomic_n,
    atomic_set,
    atomic_z,
    empty_set,
    halfline,
    interval,
    interval_set,
    line,
    measure,
)
from .spaces import (
    LogClip,
    Lorentz,
    Lp,
    MarcStrong,
    MarcWeak,
    NormSpec,
    Power,
    StepApprox,
    WeakLp,
    XiWeight,
    fundamental_function,
    logclip_norm_of_log_profile,
    norm_eval,
    phi_at,
    phi_breakpoints,
    quasiconcave_check,
    xi_seminorm,
)
from .stepfn import (
    AtomSeq,
    MeasFn,
    StepFn,
    UndefinedIntegralError,
    abs_fn,
    add,
    constant,
    indicator,
    integrate,
    linear_combine,
    pointwise_leq,
    pointwise_max,
    pointwise_mul,
    scale,
    seq,
    seq_from_values,
    step,
    subtract,
)
from .symbols import (
    Affine,
    AffineTail,
    AtomicSymbol,
    Branch,
    ExpRecip,
    IntervalSymbol,
    PowerBounds,
    PowerOnUnit,
    ShiftedPower,
    Symbol,
    SymbolAnalysis,
    atomic_power,
    check_condition_I,
    lower_bound,
    measure_bound,
    power_measure_bound,
    preimage,
    preimage_measure,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
