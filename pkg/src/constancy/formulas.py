"""Closed-form error probabilities and efficiency functions, exact and float.

Two querying procedures decide whether an unknown n-bit Boolean function is
constant:

* classical: query distinct inputs uniformly at random, up to k times,
  stopping early when two answers differ;
* quantum: iterate the Deutsch-Jozsa circuit up to k times, stopping early
  when a measurement returns z != 0.

Both err only by declaring a non-constant function constant.  For a table
with m minority outputs the classical error is a ratio of rising
factorials (hypergeometrically, the chance that k draws without
replacement all hit the same value class), and the quantum error is the
(2k)-th power of 1 - m/2**(n-1).  Everything here is a pure function of
its integer arguments; exact results are arbitrary-precision rationals.

The averaged quantities (pbar/qbar/delta_bar) sum over all 2**(2**n)
functions.  Exact mode is limited to n <= N_EXACT; above that a log-space
floating path with windowed binomial weights and compensated summation is
used, with absolute error below 1e-12.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

# Largest n for which the averaged quantities are computed as exact
# rationals; the binomial weights then have ~2**n-bit numerators, which
# stays cheap up to here.
N_EXACT = 10

_LN2 = math.log(2.0)


def pochhammer(a, k):
    """Rising factorial a (a+1) ... (a+k-1); empty product is 1."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    return math.prod(range(a, a + k))


def _log_ratio_of_ints(num, den):
    """Accurate log(num/den) for positive big integers (no overflow)."""
    sn = max(num.bit_length() - 64, 0)
    sd = max(den.bit_length() - 64, 0)
    return math.log(num >> sn) - math.log(den >> sd) + (sn - sd) * _LN2


@dataclass(frozen=True)
class ExactProb:
    """An exact rational probability with float and log views."""

    fraction: Fraction

    def __post_init__(self):
        if not 0 <= self.fraction <= 1:
            raise ValueError(f"probability {self.fraction} outside [0, 1]")

    @property
    def numerator(self):
        return self.fraction.numerator

    @property
    def denominator(self):
        return self.fraction.denominator

    @property
    def as_float(self):
        """Correctly rounded float view (underflows to 0.0 for tiny values)."""
        return float(self.fraction)

    def log_value(self):
        """Natural log of the value; exact zero maps to -inf."""
        if self.fraction == 0:
            return float("-inf")
        return _log_ratio_of_ints(self.fraction.numerator, self.fraction.denominator)

    def __eq__(self, other):
        if isinstance(other, ExactProb):
            return self.fraction == other.fraction
        return self.fraction == other

    def __hash__(self):
        return hash(self.fraction)

    def __str__(self):
        return str(self.fraction)


@dataclass(frozen=True)
class EfficiencyValue:
    """A signed exact rational (classical minus quantum error)."""

    fraction: Fraction

    @property
    def as_float(self):
        return float(self.fraction)

    def __eq__(self, other):
        if isinstance(other, EfficiencyValue):
            return self.fraction == other.fraction
        return self.fraction == other

    def __lt__(self, other):
        o = other.fraction if isinstance(other, EfficiencyValue) else other
        return self.fraction < o

    def __hash__(self):
        return hash(self.fraction)

    def __str__(self):
        return str(self.fraction)


def _check_n(n, minimum=1):
    if n < minimum:
        raise ValueError(f"n={n} below the minimum {minimum} for this quantity")


def _check_k_budget(k, n):
    if not 1 <= k <= (1 << n):
        raise ValueError(f"k={k} outside [1, 2**n={1 << n}]")


def _check_m(m, n):
    if not 0 <= m <= (1 << n):
        raise ValueError(f"m={m} outside [0, 2**n={1 << n}]")


def p1(k, n):
    """Classical error against a one-off function: 1 - k/2**n.

    Probability that k distinct uniform queries on a table that deviates
    from constant at a single input all return the majority bit.  Exactly
    zero at k = 2**n: the exhaustive scan is certain.
    """
    _check_n(n)
    _check_k_budget(k, n)
    return ExactProb(Fraction((1 << n) - k, 1 << n))


def q1(k, n):
    """Quantum error against a one-off function: (1 - 2**(1-n))**(2k).

    Probability that k independent circuit iterations all measure z = 0.
    Never zero, so the iterated quantum procedure can never be certain.
    Requires n >= 2: at n = 1 a one-off function is balanced and the
    worst-case reading degenerates.
    """
    _check_n(n, 2)
    if k < 1:
        raise ValueError(f"k={k} must be >= 1")
    half = 1 << (n - 1)
    return ExactProb(Fraction((half - 1) ** (2 * k), half ** (2 * k)))


def delta1(k, n):
    """Worst-case efficiency: p1 - q1 (positive favors quantum)."""
    return EfficiencyValue(p1(k, n).fraction - q1(k, n).fraction)


def pm(k, n, m):
    """Classical error against a table with m minority outputs.

    Ratio of rising factorials ((m-2**n)_k + (-m)_k) / (-2**n)_k, equal to
    [C(2**n-m, k) + C(m, k)] / C(2**n, k): the probability that k draws
    without replacement all land in the same value class.  Numerators are
    formed before dividing, so over-long k yields an exact zero rather
    than a division error.
    """
    _check_n(n)
    _check_m(m, n)
    _check_k_budget(k, n)
    size = 1 << n
    num = pochhammer(m - size, k) + pochhammer(-m, k)
    return ExactProb(Fraction(num, pochhammer(-size, k)))


def qm(k, n, m):
    """Quantum error against a table with m minority outputs.

    (1 - m/2**(n-1))**(2k): the k-th power of the z = 0 probability of a
    single circuit run.  Exactly zero for balanced tables, exactly one for
    constant ones.
    """
    _check_n(n)
    _check_m(m, n)
    if k < 1:
        raise ValueError(f"k={k} must be >= 1")
    half = 1 << (n - 1)
    return ExactProb(Fraction((half - m) ** (2 * k), half ** (2 * k)))


def delta_m(k, n, m):
    """Efficiency for m minority outputs: pm - qm."""
    return EfficiencyValue(pm(k, n, m).fraction - qm(k, n, m).fraction)


def pbar(k, n):
    """Classical error averaged over a uniformly random function.

    Binomial-weighted sum of pm over the non-constant shapes: twice the
    m < 2**(n-1) half plus the balanced term.  The two constant functions
    carry zero error and are simply absent from the sum (their weight is
    not redistributed).  Exact mode only, n <= N_EXACT.
    """
    _check_n(n)
    _check_k_budget(k, n)
    if n > N_EXACT:
        raise ValueError(f"exact average needs n <= N_EXACT={N_EXACT}; use pbar_float")
    size = 1 << n
    half = size >> 1
    acc = 0
    for m in range(1, half):
        acc += math.comb(size, m) * (pochhammer(m - size, k) + pochhammer(-m, k))
    total = 2 * acc + math.comb(size, half) * 2 * pochhammer(-half, k)
    return ExactProb(Fraction(total, pochhammer(-size, k) * (1 << size)))


def qbar(k, n):
    """Quantum error averaged over a uniformly random function.

    Binomial-weighted sum of qm over m = 1 .. 2**n - 1 (constants again
    contribute zero error).  Exact mode only, n <= N_EXACT.
    """
    _check_n(n)
    _check_k_budget(k, n)
    if n > N_EXACT:
        raise ValueError(f"exact average needs n <= N_EXACT={N_EXACT}; use qbar_float")
    size = 1 << n
    half = size >> 1
    num = sum(math.comb(size, m) * (half - m) ** (2 * k) for m in range(1, size))
    return ExactProb(Fraction(num, (1 << size) * half ** (2 * k)))


def delta_bar(k, n):
    """Average-case efficiency: pbar - qbar.  Exact mode only."""
    return EfficiencyValue(pbar(k, n).fraction - qbar(k, n).fraction)


# Floating path for the averaged quantities.  The binomial weight
# C(2**n, m)/2**(2**n) is negligible (< 1e-33 total) outside a 16-sigma
# window around m = 2**(n-1); inside it, log-weights and log-probabilities
# are anchored once and extended by exact-ratio recurrences, keeping every
# absolute error far below the documented 1e-12 bound.

_CHUNK = 1 << 20


@lru_cache(maxsize=None)
def _center_log_weight(n):
    """log(C(N, N/2) / 2**N), cancellation-free via fsum of per-factor logs."""
    half = 1 << (n - 1)

    def chunks():
        for start in range(1, half + 1, _CHUNK):
            i = np.arange(start, min(start + _CHUNK, half + 1), dtype=np.float64)
            yield np.log((half + i) / (4.0 * i))

    return math.fsum(itertools.chain.from_iterable(chunks()))


def _log_falling_ratio(size, a, k):
    """log of prod_{j<k} (a-j)/(size-j), i.e. log(C(a,k)/C(size,k)); -inf if k > a."""
    if k > a:
        return float("-inf")
    total = 0.0
    for start in range(0, k, _CHUNK):
        j = np.arange(start, min(start + _CHUNK, k), dtype=np.float64)
        total += math.fsum(np.log((a - j) / (size - j)))
    return total


def _window(n):
    """Minority counts whose binomial weight is non-negligible."""
    size = 1 << n
    half = size >> 1
    w = int(8.0 * math.sqrt(size)) + 1
    return max(1, half - w), min(size - 1, half + w)


def _window_log_weights(n, mlo, mhi):
    size = 1 << n
    half = size >> 1
    ms = np.arange(mlo, mhi + 1, dtype=np.int64)
    out = np.empty(ms.shape[0], dtype=np.float64)
    center = _center_log_weight(n)
    out[half - mlo] = center
    if half > mlo:
        # downward: log w(m-1) - log w(m) = log(m / (N - m + 1))
        m = np.arange(half, mlo, -1, dtype=np.float64)
        out[: half - mlo] = (center + np.cumsum(np.log(m / (size - m + 1))))[::-1]
    if mhi > half:
        # upward: log w(m+1) - log w(m) = log((N - m) / (m + 1))
        m = np.arange(half, mhi, dtype=np.float64)
        out[half - mlo + 1 :] = center + np.cumsum(np.log((size - m) / (m + 1)))
    return ms, out


def _log_same_class_probs(size, k, ms, anchor_a_is_complement):
    """Vector of log prod_{j<k} (a-j)/(size-j) with a = size-m or a = m."""
    count = ms.shape[0]
    out = np.full(count, -np.inf)
    if anchor_a_is_complement:
        # a = size - m, decreasing in m; anchor at the smallest m.
        a0 = size - int(ms[0])
        out[0] = _log_falling_ratio(size, a0, k)
        if count > 1:
            a = size - ms[:-1].astype(np.float64)
            with np.errstate(divide="ignore", invalid="ignore"):
                incr = np.where(a - k > 0, np.log(np.maximum(a - k, 1e-300) / a), -np.inf)
            out[1:] = out[0] + np.cumsum(incr)
    else:
        # a = m, increasing in m; anchor at the first m >= k.
        start = int(np.searchsorted(ms, k))
        if start < count:
            out[start] = _log_falling_ratio(size, int(ms[start]), k)
            if start + 1 < count:
                m = ms[start:-1].astype(np.float64)
                incr = np.log((m + 1) / (m + 1 - k))
                out[start + 1 :] = out[start] + np.cumsum(incr)
    return out


def pbar_float(k, n):
    """Floating-point pbar for any n >= 1; absolute error <= 1e-12."""
    _check_n(n)
    _check_k_budget(k, n)
    size = 1 << n
    mlo, mhi = _window(n)
    ms, logw = _window_log_weights(n, mlo, mhi)
    log_p0 = _log_same_class_probs(size, k, ms, anchor_a_is_complement=True)
    log_p1 = _log_same_class_probs(size, k, ms, anchor_a_is_complement=False)
    return float(np.sum(np.exp(logw + np.logaddexp(log_p0, log_p1))))


def qbar_float(k, n):
    """Floating-point qbar for any n >= 1; absolute error <= 1e-12."""
    _check_n(n)
    _check_k_budget(k, n)
    half = 1 << (n - 1)
    mlo, mhi = _window(n)
    ms, logw = _window_log_weights(n, mlo, mhi)
    with np.errstate(divide="ignore"):
        logq = 2 * k * np.log(np.abs(half - ms) / half)
    return float(np.sum(np.exp(logw + logq)))


def delta_bar_float(k, n):
    """Floating-point delta_bar for any n >= 1; absolute error <= 2e-12."""
    return pbar_float(k, n) - qbar_float(k, n)


def kstar_closed_form(n):
    """Approximate location of the worst-case efficiency maximum.

    Stationary point of the continuous relaxation of delta1 in k; roughly
    0.35 * 2**n for large 2**n.  Kept for comparison only; the grid argmax
    is authoritative.
    """
    _check_n(n, 3)
    log_base = math.log(1.0 - 2.0 ** (1 - n))
    return 0.5 * math.log(-(2.0 ** (-1 - n)) / log_base) / log_base


@lru_cache(maxsize=None)
def _argmax_delta1(n):
    """Exact integer argmax of delta1(., n) over 1 <= k <= 2**n - 1.

    delta1(k+1) - delta1(k) > 0 iff 2**n (b^2 - a^2) a^(2k) > b^(2k+2)
    with a = 2**(n-1) - 1, b = 2**(n-1).  The left/right ratio is strictly
    decreasing in k, so the sign flips exactly once and the first
    non-increase marks the (smallest-k) maximum.  Integer arithmetic
    throughout; needs n >= 2.
    """
    size = 1 << n
    b = size >> 1
    a = b - 1
    a2, b2 = a * a, b * b
    lhs_const = size * (b2 - a2)
    acc_a, acc_b = a2, b2
    k = 1
    while k < size - 1:
        if lhs_const * acc_a <= acc_b * b2:
            return k
        acc_a *= a2
        acc_b *= b2
        k += 1
    return size - 1


def kstar_exact(n):
    """Exact argmax of delta1(., n) over the integer grid, smallest k on ties."""
    _check_n(n, 3)
    return _argmax_delta1(n)
