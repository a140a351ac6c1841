"""Deciding whether an n-bit Boolean function is constant: exact error
probabilities and simulators for the classical without-replacement
querying procedure and the iterated Deutsch-Jozsa procedure, plus the
efficiency comparisons between them."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .classical import (
    DecisionOutcome,
    ErrorProbability,
    MCEstimate,
    Verdict,
    classical_decide,
    classical_error_exact,
    classical_error_mc,
    wilson_interval,
)
from .formulas import (
    N_EXACT,
    EfficiencyValue,
    ExactProb,
    delta1,
    delta_bar,
    delta_bar_float,
    delta_m,
    kstar_closed_form,
    kstar_exact,
    p1,
    pbar,
    pbar_float,
    pm,
    pochhammer,
    q1,
    qbar,
    qbar_float,
    qm,
)
from .quantum import (
    N_MAX_Q,
    MeasurementDistribution,
    Statevector,
    dj_output_state,
    measurement_distribution,
    prob_z_zero,
    quantum_decide,
    quantum_error_mc,
)
from .sweeps import (
    DEFAULT_GRID,
    ReconcileReport,
    ReconcileRow,
    SweepRecord,
    find_negative_region,
    reconcile,
    reconcile_grid,
    sweep_delta1,
    sweep_delta_bar,
    sweep_delta_m,
)
from .tables import (
    N_MAX,
    FunctionClass,
    FunctionProfile,
    TruthTable,
    evaluate,
    make_fm,
    profile,
    random_function,
)

__version__ = "0.1.0"
