"""Dense statevector simulation of the constancy-testing quantum circuit.

The circuit is Hadamards on every register qubit, the function oracle, and
Hadamards again.  The oracle's ancilla qubit is never materialized: acting
on the (|0> - |1>)/sqrt(2) ancilla it reduces to the diagonal phase
(-1)^f(x) on the n-qubit register (phase kickback), which halves memory
and leaves the output state bit-identical.  Output amplitudes of this
circuit are real, so DJ states are stored as float64; the measurement
outcome z = 0 then has probability amp(0)**2, equal to
(1 - m/2**(n-1))**2 for a table with m minority outputs.

The iterated decision procedure samples z = 0 as a Bernoulli draw on that
exact probability (the verdict only distinguishes z = 0 from z != 0); the
full outcome distribution stays available for inspection.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels, rngstreams, tables
from .classical import DecisionOutcome, Verdict, _chunked_uniforms, _estimate

# Memory guard for statevector allocation: 2**24 float64 amplitudes is
# 128 MiB (complex128 would double that).
N_MAX_Q = 24

_NORM_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class Statevector:
    """2**n amplitudes indexed by the basis label z."""

    n: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.shape != (1 << self.n,):
            raise ValueError("amplitude count must be 2**n")

    def norm_squared(self):
        return float(np.sum(np.abs(self.amplitudes) ** 2))


@dataclass(frozen=True, eq=False)
class MeasurementDistribution:
    """Computational-basis outcome probabilities of a statevector."""

    probabilities: np.ndarray

    @property
    def p_zero(self):
        return float(self.probabilities[0])


def hadamard_layer(amplitudes):
    """Apply the n-fold Hadamard in place (orthonormal Walsh-Hadamard)."""
    _kernels.fwht_inplace(amplitudes)


def dj_output_state(tt):
    """Output state of the circuit run on the oracle for ``tt``.

    amp(z) = 2**-n * sum_x (-1)**(z.x + f(x)) with z.x the bitwise inner
    product, computed as Hadamard layer -> (-1)**f(x) phase -> Hadamard
    layer in O(n 2**n) rather than the O(4**n) double sum.
    """
    if tt.n > N_MAX_Q:
        raise ValueError(f"n={tt.n} above N_MAX_Q={N_MAX_Q} (statevector would exceed 128 MiB)")
    amp = np.zeros(tt.size, dtype=np.float64)
    amp[0] = 1.0
    hadamard_layer(amp)
    amp[tt.bits() == 1] *= -1.0
    hadamard_layer(amp)
    return Statevector(tt.n, amp)


def measurement_distribution(sv):
    """Born-rule outcome distribution, clamped into [0, 1]."""
    probs = np.abs(sv.amplitudes) ** 2
    return MeasurementDistribution(np.clip(probs, 0.0, 1.0))


def prob_z_zero(sv):
    """Probability of measuring z = 0; rejects unnormalized states."""
    if abs(sv.norm_squared() - 1.0) > _NORM_ATOL:
        raise ValueError(f"state norm**2 = {sv.norm_squared()!r} deviates beyond {_NORM_ATOL}")
    return float(abs(sv.amplitudes[0]) ** 2)


def quantum_decide(tt, k, rng):
    """Iterate the circuit up to k times, stopping at the first z != 0.

    Each iteration is an independent Bernoulli draw of z = 0 with the
    state's exact probability.  The transcript records (iteration, flag)
    with flag 0 for z = 0 and 1 for z != 0; a NOT_CONSTANT verdict stops
    at the first flag 1.
    """
    if k < 1:
        raise ValueError(f"k={k} must be >= 1")
    p_zero = prob_z_zero(dj_output_state(tt))
    transcript = []
    for j in range(k):
        saw_nonzero = rng.random() >= p_zero
        transcript.append((j, int(saw_nonzero)))
        if saw_nonzero:
            return DecisionOutcome(Verdict.NOT_CONSTANT, j + 1, tuple(transcript))
    return DecisionOutcome(Verdict.CONSTANT, k, tuple(transcript))


def quantum_error_mc(tt, k, trials, seed, stream_label="quantum-mc"):
    """Monte Carlo estimate of the quantum error rate.

    Mirrors classical_error_mc: trial i consumes row i of a (trials, k)
    uniform block from the (seed, label) sub-stream.  Wrong verdicts are
    counted against the table's actual class, so a constant table gives
    exactly 0.
    """
    if k < 1:
        raise ValueError(f"k={k} must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p_zero = prob_z_zero(dj_output_state(tt))
    is_constant = tables.profile(tt).m == 0
    rng = rngstreams.substream(seed, stream_label)
    errors = 0
    for u in _chunked_uniforms(rng, trials, k, 1):
        constant_verdicts = _kernels.quantum_verdicts(p_zero, k, u)
        wrong = constant_verdicts == 0 if is_constant else constant_verdicts == 1
        errors += int(wrong.sum())
    return _estimate(errors, trials)
