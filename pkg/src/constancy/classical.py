"""The classical constancy-decision procedure and its error estimators.

The only sensible classical strategy: query distinct inputs uniformly at
random, up to a budget of k, and stop at the first pair of differing
answers.  The without-replacement discipline is what produces the
telescoping conditional probabilities behind the closed forms in
``formulas``; repeated queries would only waste budget.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels, formulas, rngstreams, tables


class Verdict(Enum):
    CONSTANT = "constant"
    NOT_CONSTANT = "not-constant"


@dataclass(frozen=True)
class DecisionOutcome:
    """Result of one decision run.

    For the classical procedure the transcript holds (input, output-bit)
    pairs for each query made, in order; a NOT_CONSTANT verdict means the
    last entry disagreed with the first and querying stopped there.
    """

    verdict: Verdict
    queries_used: int
    transcript: Optional[tuple] = None


class MCEstimate(NamedTuple):
    """Monte Carlo error-rate estimate with a Wilson 95% interval."""

    errors: int
    trials: int
    estimate: float
    stderr: float
    wilson_low: float
    wilson_high: float


class ErrorProbability(NamedTuple):
    """Exact error probability; vacuous flags a constant table (no error
    is possible, the value is 0 by definition)."""

    prob: formulas.ExactProb
    vacuous: bool


def _sample_step(j, u, size, swapped):
    """One partial Fisher-Yates step over a sparse permutation dict."""
    r = j + int(u * (size - j))
    value = swapped.get(r, r)
    swapped[r] = swapped.get(j, j)
    return value


def classical_decide(tt, k, rng, keep_transcript=True):
    """Run the classical procedure once on a concrete table.

    Queries are distinct inputs drawn uniformly without replacement from
    ``rng`` (one uniform double per query, r = j + floor(u * (2**n - j))),
    the same stream discipline as the Monte Carlo kernels.  Set
    keep_transcript=False to skip recording (input, output) pairs.
    """
    size = tt.size
    if not 1 <= k <= size:
        raise ValueError(f"k={k} outside [1, 2**n={size}]")
    swapped = {}
    transcript = [] if keep_transcript else None
    first = None
    for j in range(k):
        x = _sample_step(j, rng.random(), size, swapped)
        bit = tt.evaluate(x)
        if keep_transcript:
            transcript.append((x, bit))
        if first is None:
            first = bit
        elif bit != first:
            return DecisionOutcome(
                Verdict.NOT_CONSTANT, j + 1, tuple(transcript) if keep_transcript else None
            )
    return DecisionOutcome(Verdict.CONSTANT, k, tuple(transcript) if keep_transcript else None)


def classical_error_exact(tt, k):
    """Exact probability that the procedure wrongly calls ``tt`` constant.

    Looks up the minority count and delegates to the closed form; constant
    tables cannot produce an error, so the result is 0 with vacuous=True.
    """
    prof = tables.profile(tt)
    if prof.m == 0:
        if not 1 <= k <= tt.size:
            raise ValueError(f"k={k} outside [1, 2**n={tt.size}]")
        return ErrorProbability(formulas.ExactProb(Fraction(0)), True)
    return ErrorProbability(formulas.pm(k, tt.n, prof.m), False)


# Upper bound on scratch + uniform-block elements per kernel call.
_CHUNK_BUDGET = 1 << 23


def _chunked_uniforms(rng, trials, k, size):
    """Yield per-trial uniform blocks in row chunks of a fixed width.

    Chunking is bit-compatible with a single (trials, k) draw because the
    generator fills row-major.
    """
    rows = max(1, min(trials, _CHUNK_BUDGET // max(k, size)))
    done = 0
    while done < trials:
        take = min(rows, trials - done)
        yield rng.random((take, k))
        done += take


def classical_error_mc(tt, k, trials, seed, stream_label="classical-mc"):
    """Monte Carlo estimate of the classical error rate.

    Runs ``trials`` independent decisions (trial i consumes row i of a
    (trials, k) uniform block from the (seed, label) sub-stream, so the
    aggregate is identical however the rows are batched or parallelized)
    and counts wrong verdicts.  On a constant table the procedure cannot
    err and the estimate is exactly 0.
    """
    size = tt.size
    if not 1 <= k <= size:
        raise ValueError(f"k={k} outside [1, 2**n={size}]")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = rngstreams.substream(seed, stream_label)
    bits = tt.bits()
    idx = np.arange(size, dtype=np.int64)
    is_constant = tables.profile(tt).m == 0
    errors = 0
    for u in _chunked_uniforms(rng, trials, k, size):
        constant_verdicts = _kernels.classical_verdicts(bits, k, u, idx)
        wrong = constant_verdicts == 0 if is_constant else constant_verdicts == 1
        errors += int(wrong.sum())
    return _estimate(errors, trials)


def _estimate(errors, trials):
    p_hat = errors / trials
    stderr = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    low, high = wilson_interval(errors, trials)
    return MCEstimate(errors, trials, p_hat, stderr, low, high)


def wilson_interval(successes, trials, z=1.959963984540054):
    """Wilson score interval for a binomial proportion (default 95%)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p_hat = successes / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p_hat + z2 / (2 * trials)) / denom
    half = z * math.sqrt(p_hat * (1 - p_hat) / trials + z2 / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)
