"""Grid sweeps of the efficiency functions, sign-region detection, and
analytic-vs-Monte-Carlo reconciliation.

Sweeps evaluate the exact rational forms and record float renditions;
records are emitted in canonical (n, m, k) order regardless of how the
grid is traversed.  Sign decisions are always taken on exact rationals.
"""

import math
from dataclasses import dataclass
from typing import Optional

from . import classical, formulas, quantum, rngstreams, tables

#: z-score magnitude beyond which a reconciliation row is flagged.
Z_FLAG = 4.0

#: Default reconciliation grid: every (n, m, k) with k in {1, 2**(n-1),
#: 2**n - 1} and m in {1, 2**(n-2), 2**(n-1)} for n = 2..6, plus one
#: larger spot check.  Both procedures run on every point.
DEFAULT_GRID = tuple(
    sorted(
        {
            (n, m, k)
            for n in range(2, 7)
            for m in {1, 1 << (n - 2), 1 << (n - 1)}
            for k in {1, 1 << (n - 1), (1 << n) - 1}
        }
        | {(7, 10, 2)}
    )
)


@dataclass(frozen=True)
class SweepRecord:
    """One grid point of an efficiency sweep.

    m is None for worst-case and average-case sweeps.  The *_mc fields are
    filled only when a Monte Carlo pass ran.  mode records whether the
    analytic values came from exact rationals or the log-space float path.
    """

    n: int
    k: int
    m: Optional[int]
    p_analytic: float
    q_analytic: float
    delta_analytic: float
    mode: str
    is_max: bool = False
    p_mc: Optional[float] = None
    p_mc_stderr: Optional[float] = None
    q_mc: Optional[float] = None
    q_mc_stderr: Optional[float] = None
    delta_mc: Optional[float] = None
    delta_mc_stderr: Optional[float] = None


def sweep_delta1(n_list, k_stride=1):
    """Worst-case efficiency curves, one record per (n, k).

    The stride thins the k grid but the exact argmax and the endpoint
    k = 2**n - 1 are always included; the argmax row is flagged.  Exact
    powers are maintained incrementally, so a full n = 12 sweep stays
    cheap.
    """
    if not n_list:
        raise ValueError("empty n grid")
    if k_stride < 1:
        raise ValueError("k_stride must be >= 1")
    records = []
    for n in sorted(set(n_list)):
        if n < 2:
            raise ValueError(f"n={n} below 2: the worst-case curve needs n >= 2")
        size = 1 << n
        k_max = formulas._argmax_delta1(n)
        grid = sorted(set(range(1, size, k_stride)) | {k_max, size - 1})
        b = size >> 1
        a = b - 1
        acc_a, acc_b = 1, 1  # a**(2k), b**(2k) carried across the grid
        prev_k = 0
        for k in grid:
            acc_a *= a ** (2 * (k - prev_k))
            acc_b *= b ** (2 * (k - prev_k))
            prev_k = k
            p = (size - k) / size
            q = acc_a / acc_b  # big-int true division is correctly rounded
            records.append(
                SweepRecord(
                    n=n, k=k, m=None,
                    p_analytic=p, q_analytic=q, delta_analytic=p - q,
                    mode="exact", is_max=(k == k_max),
                )
            )
    return records


def sweep_delta_m(n, m_list, k_range):
    """Per-shape efficiency curves at fixed n, one record per (m, k)."""
    if n < 2:
        raise ValueError(f"n={n} below 2")
    ms = sorted(set(m_list))
    ks = sorted(set(k_range))
    if not ms or not ks:
        raise ValueError("empty grid")
    for m in ms:
        if not 1 <= m <= (1 << n) - 1:
            raise ValueError(f"m={m} outside [1, 2**n - 1]")
    records = []
    for m in ms:
        for k in ks:
            p = formulas.pm(k, n, m)
            q = formulas.qm(k, n, m)
            records.append(
                SweepRecord(
                    n=n, k=k, m=m,
                    p_analytic=p.as_float, q_analytic=q.as_float,
                    delta_analytic=p.as_float - q.as_float, mode="exact",
                )
            )
    return records


def sweep_delta_bar(n_list):
    """Average-case efficiency curves over k = 1 .. 2**n - 1 per n.

    Exact rationals up to N_EXACT, the log-space float path above.
    """
    if not n_list:
        raise ValueError("empty n grid")
    records = []
    for n in sorted(set(n_list)):
        if n < 1:
            raise ValueError(f"n={n} below 1")
        exact = n <= formulas.N_EXACT
        for k in range(1, 1 << n):
            if exact:
                p = formulas.pbar(k, n).as_float
                q = formulas.qbar(k, n).as_float
            else:
                p = formulas.pbar_float(k, n)
                q = formulas.qbar_float(k, n)
            records.append(
                SweepRecord(
                    n=n, k=k, m=None,
                    p_analytic=p, q_analytic=q, delta_analytic=p - q,
                    mode="exact" if exact else "float",
                )
            )
    return records


def delta_monotone_nonincreasing(records):
    """True when delta_analytic never increases along k within each n."""
    by_n = {}
    for r in sorted(records, key=lambda r: (r.n, r.k)):
        by_n.setdefault(r.n, []).append(r.delta_analytic)
    return all(
        all(later <= earlier for earlier, later in zip(vals, vals[1:]))
        for vals in by_n.values()
    )


def find_negative_region(n, m):
    """Maximal suffix of {1..2**n} where the m-shape efficiency is negative.

    Scans k downward from 2**n using exact rational signs; returns an
    inclusive (k_low, k_high) pair, or None when delta_m(2**n) >= 0.
    """
    if not 1 <= m <= (1 << n) - 1:
        raise ValueError(f"m={m} outside [1, 2**n - 1]")
    size = 1 << n
    k = size
    while k >= 1 and formulas.delta_m(k, n, m).fraction < 0:
        k -= 1
    if k == size:
        return None
    return (k + 1, size)


@dataclass(frozen=True)
class ReconcileRow:
    procedure: str
    n: int
    m: int
    k: int
    trials: int
    analytic: float
    estimate: float
    stderr: float
    z: float
    flagged: bool


@dataclass(frozen=True)
class ReconcileReport:
    rows: tuple
    ok: bool


def _z_score(analytic, estimate, trials):
    sigma = math.sqrt(analytic * (1.0 - analytic) / trials)
    if sigma == 0.0:
        return 0.0 if estimate == analytic else math.inf
    return (estimate - analytic) / sigma


def reconcile(n, m, k, trials, seed):
    """Compare Monte Carlo error rates against the closed forms at one point.

    Runs both procedures on a canonical m-minority table (minority inputs
    0..m-1; placement does not affect either error distribution) with
    per-row derived sub-seeds, and flags any |z| > 4.  A constant table
    (m = 0) cannot produce an error: both analytic references are 0 and
    the estimates must match exactly.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    tt = tables.make_fm(n, m, majority_bit=0, ones_positions=range(m))
    vacuous = m == 0
    analytic_p = 0.0 if vacuous else formulas.pm(k, n, m).as_float
    analytic_q = 0.0 if vacuous else formulas.qm(k, n, m).as_float
    est_p = classical.classical_error_mc(
        tt, k, trials, rngstreams.derive_seed(seed, f"reconcile/classical/n{n}/m{m}/k{k}")
    )
    est_q = quantum.quantum_error_mc(
        tt, k, trials, rngstreams.derive_seed(seed, f"reconcile/quantum/n{n}/m{m}/k{k}")
    )
    rows = []
    for procedure, analytic, est in (
        ("classical", analytic_p, est_p),
        ("quantum", analytic_q, est_q),
    ):
        z = _z_score(analytic, est.estimate, trials)
        rows.append(
            ReconcileRow(procedure, n, m, k, trials, analytic,
                         est.estimate, est.stderr, z, abs(z) > Z_FLAG)
        )
    return ReconcileReport(tuple(rows), not any(r.flagged for r in rows))


def reconcile_grid(grid=DEFAULT_GRID, trials=100_000, seed=0):
    """Run reconcile over a grid; ok iff every row is unflagged."""
    rows = []
    for n, m, k in sorted(set(grid)):
        rows.extend(reconcile(n, m, k, trials, seed).rows)
    return ReconcileReport(tuple(rows), not any(r.flagged for r in rows))
