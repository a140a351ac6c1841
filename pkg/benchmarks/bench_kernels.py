#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Covers the three hot loops (Walsh-Hadamard transform, classical and
quantum Monte Carlo verdict counting) and verifies on the way that both
backends return bit-identical results.

    python benchmarks/bench_kernels.py [--fwht-max-n 22] [--trials 200000]
"""

import argparse
import time

import numpy as np

from constancy import rngstreams
from constancy._kernels import compiled, fallback
from constancy.tables import make_fm


def best_of(func, repeats=3):
    times = []
    for _ in range(repeats):
        start = time.perf_counter()
        func()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_fwht(max_n):
    print(f"{'fwht':>10} {'len':>10} {'compiled':>12} {'fallback':>12} {'speedup':>9}")
    for n in range(10, max_n + 1, 2):
        vec = rngstreams.substream(n, "bench-fwht").standard_normal(1 << n)
        a, b = vec.copy(), vec.copy()
        compiled.fwht_inplace(a)
        fallback.fwht_inplace(b)
        assert np.array_equal(a, b), "backends disagree"
        tc = best_of(lambda: compiled.fwht_inplace(vec.copy()))
        tf = best_of(lambda: fallback.fwht_inplace(vec.copy()))
        print(f"{'n=' + str(n):>10} {1 << n:>10} {tc * 1e3:>10.2f}ms {tf * 1e3:>10.2f}ms {tf / tc:>8.1f}x")


def bench_classical(trials):
    print(f"{'classical':>10} {'k':>10} {'compiled':>12} {'fallback':>12} {'speedup':>9}")
    for n, m, k in ((5, 1, 16), (6, 16, 32), (8, 3, 64)):
        tt = make_fm(n, m, ones_positions=range(m))
        bits = tt.bits()
        u = rngstreams.substream(k, "bench-classical").random((trials, k))
        idx = np.arange(1 << n, dtype=np.int64)
        vc = compiled.classical_verdicts(bits, k, u, idx)
        vf = fallback.classical_verdicts(bits, k, u, idx)
        assert np.array_equal(vc, vf), "backends disagree"
        tc = best_of(lambda: compiled.classical_verdicts(bits, k, u, idx))
        tf = best_of(lambda: fallback.classical_verdicts(bits, k, u, idx))
        label = f"n={n},k={k}"
        print(f"{label:>10} {k:>10} {tc * 1e3:>10.2f}ms {tf * 1e3:>10.2f}ms {tf / tc:>8.1f}x")


def bench_quantum(trials):
    print(f"{'quantum':>10} {'k':>10} {'compiled':>12} {'fallback':>12} {'speedup':>9}")
    for p_zero, k in ((0.9375**2, 8), (0.25, 32)):
        u = rngstreams.substream(k, "bench-quantum").random((trials, k))
        vc = compiled.quantum_verdicts(p_zero, k, u)
        vf = fallback.quantum_verdicts(p_zero, k, u)
        assert np.array_equal(vc, vf), "backends disagree"
        tc = best_of(lambda: compiled.quantum_verdicts(p_zero, k, u))
        tf = best_of(lambda: fallback.quantum_verdicts(p_zero, k, u))
        label = f"p0={p_zero:.2f}"
        print(f"{label:>10} {k:>10} {tc * 1e3:>10.2f}ms {tf * 1e3:>10.2f}ms {tf / tc:>8.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--fwht-max-n", type=int, default=22)
    parser.add_argument("--trials", type=int, default=200_000)
    args = parser.parse_args()
    if compiled is None:
        raise SystemExit("compiled extension not built; nothing to compare")
    bench_fwht(args.fwht_max_n)
    print()
    bench_classical(args.trials)
    print()
    bench_quantum(args.trials)


if __name__ == "__main__":
    main()
