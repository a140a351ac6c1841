import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import ReplayRng, replay_uniforms_for

from constancy import formulas, rngstreams
from constancy.classical import (
    Verdict,
    classical_decide,
    classical_error_exact,
    classical_error_mc,
    wilson_interval,
)
from constancy.tables import TruthTable, make_fm


def one_off_table(n, position=0):
    return make_fm(n, 1, ones_positions={position})


class TestDecide:
    def test_constant_always_constant_verdict(self):
        tt = make_fm(3, 0)
        for seed in range(20):
            outcome = classical_decide(tt, 5, rngstreams.substream(seed, "t"))
            assert outcome.verdict is Verdict.CONSTANT
            assert outcome.queries_used == 5

    def test_full_budget_is_certain_on_one_off(self):
        tt = one_off_table(3, position=6)
        for seed in range(50):
            outcome = classical_decide(tt, 8, rngstreams.substream(seed, "t"))
            assert outcome.verdict is Verdict.NOT_CONSTANT

    def test_stops_at_first_difference(self):
        tt = TruthTable.from_bits(2, [0, 1, 1, 0])
        for seed in range(30):
            outcome = classical_decide(tt, 4, rngstreams.substream(seed, "t"))
            assert outcome.verdict is Verdict.NOT_CONSTANT
            trail = [bit for _, bit in outcome.transcript]
            assert len(set(trail[:-1])) == 1 and trail[-1] != trail[0]
            assert outcome.queries_used == len(trail)

    def test_early_stop_implies_not_constant(self):
        tt = one_off_table(4)
        for seed in range(50):
            outcome = classical_decide(tt, 16, rngstreams.substream(seed, "t"))
            if outcome.queries_used < 16:
                assert outcome.verdict is Verdict.NOT_CONSTANT

    @given(st.integers(1, 6), st.integers(0, 2**32), st.data())
    @settings(max_examples=60)
    def test_transcript_inputs_distinct(self, n, seed, data):
        k = data.draw(st.integers(1, 1 << n))
        tt = make_fm(n, data.draw(st.integers(0, 1 << n)),
                     rng=rngstreams.substream(seed, "table"))
        outcome = classical_decide(tt, k, rngstreams.substream(seed, "queries"))
        inputs = [x for x, _ in outcome.transcript]
        assert len(inputs) == len(set(inputs))
        assert all(tt.evaluate(x) == bit for x, bit in outcome.transcript)

    def test_transcript_disabled(self):
        outcome = classical_decide(
            one_off_table(3), 4, rngstreams.substream(0, "t"), keep_transcript=False
        )
        assert outcome.transcript is None

    def test_budget_validated(self):
        with pytest.raises(ValueError):
            classical_decide(one_off_table(2), 0, rngstreams.substream(0, "t"))
        with pytest.raises(ValueError):
            classical_decide(one_off_table(2), 5, rngstreams.substream(0, "t"))

    def test_balanced_pair_probability_exhaustive(self):
        # every ordered query pair on a balanced 2-bit table: the constant
        # verdict must appear for exactly the same-valued pairs, 4 of 12
        tt = TruthTable.from_bits(2, [0, 1, 1, 0])
        hits = 0
        total = 0
        for pair in itertools.permutations(range(4), 2):
            outcome = classical_decide(tt, 2, ReplayRng(replay_uniforms_for(pair, 4)))
            observed = tuple(x for x, _ in outcome.transcript)
            assert observed == pair[: len(observed)]
            total += 1
            hits += outcome.verdict is Verdict.CONSTANT
        assert Fraction(hits, total) == formulas.pm(2, 2, 2).fraction == Fraction(1, 3)


class TestExhaustiveEquivalence:
    @pytest.mark.parametrize("n", [1, 2])
    def test_verdict_distribution_matches_pm(self, n):
        # drive the sampler through every ordered k-tuple via replayed
        # uniforms and compare the constant-verdict fraction with pm
        size = 1 << n
        for m in range(0, size + 1):
            tt = make_fm(n, m, ones_positions=range(m))
            for k in range(1, size + 1):
                hits = 0
                total = 0
                for perm in itertools.permutations(range(size), k):
                    outcome = classical_decide(
                        tt, k, ReplayRng(replay_uniforms_for(perm, size))
                    )
                    total += 1
                    hits += outcome.verdict is Verdict.CONSTANT
                assert Fraction(hits, total) == formulas.pm(k, n, m).fraction

    def test_verdict_distribution_matches_pm_n3_spot(self):
        size = 8
        tt = make_fm(3, 3, ones_positions={0, 4, 6})
        for k in (1, 2, 3, 4):
            hits = 0
            total = 0
            for perm in itertools.permutations(range(size), k):
                outcome = classical_decide(
                    tt, k, ReplayRng(replay_uniforms_for(perm, size))
                )
                total += 1
                hits += outcome.verdict is Verdict.CONSTANT
            assert Fraction(hits, total) == formulas.pm(k, 3, 3).fraction


class TestErrorExact:
    def test_one_off(self):
        assert classical_error_exact(one_off_table(4), 3).prob == Fraction(13, 16)

    def test_balanced(self):
        tt = TruthTable.from_bits(2, [1, 0, 0, 1])
        assert classical_error_exact(tt, 2).prob == Fraction(1, 3)

    def test_constant_vacuous(self):
        result = classical_error_exact(make_fm(3, 0), 4)
        assert result.prob == 0
        assert result.vacuous

    def test_non_constant_not_vacuous(self):
        assert not classical_error_exact(one_off_table(3), 2).vacuous


class TestErrorMc:
    def test_within_3_sigma_of_closed_form(self):
        tt = one_off_table(5, position=9)
        est = classical_error_mc(tt, 8, trials=100_000, seed=0)
        analytic = formulas.p1(8, 5).as_float
        sigma = (analytic * (1 - analytic) / est.trials) ** 0.5
        assert abs(est.estimate - analytic) < 3 * sigma
        assert est.wilson_low < analytic < est.wilson_high

    def test_constant_exactly_zero(self):
        est = classical_error_mc(make_fm(4, 0), 7, trials=20_000, seed=1)
        assert est.errors == 0
        assert est.estimate == 0.0

    def test_deterministic_given_seed(self):
        tt = one_off_table(4)
        a = classical_error_mc(tt, 5, trials=30_000, seed=123)
        b = classical_error_mc(tt, 5, trials=30_000, seed=123)
        assert a == b

    def test_seed_changes_stream(self):
        tt = make_fm(5, 6, ones_positions=range(6))
        a = classical_error_mc(tt, 4, trials=30_000, seed=0)
        b = classical_error_mc(tt, 4, trials=30_000, seed=1)
        assert a.errors != b.errors

    def test_chunking_invariant(self, monkeypatch):
        # aggregate counts must not depend on the chunk partition
        from constancy import classical as mod

        tt = make_fm(5, 2, ones_positions={3, 17})
        baseline = classical_error_mc(tt, 9, trials=10_000, seed=5)
        monkeypatch.setattr(mod, "_CHUNK_BUDGET", 1 << 8)
        chunked = classical_error_mc(tt, 9, trials=10_000, seed=5)
        assert baseline == chunked

    def test_trials_validated(self):
        with pytest.raises(ValueError):
            classical_error_mc(one_off_table(3), 2, trials=0, seed=0)


class TestKernelDecideAgreement:
    @pytest.mark.parametrize("n,m,k", [(3, 1, 8), (4, 4, 5), (5, 16, 2), (2, 1, 4)])
    def test_kernel_matches_decide_replay(self, n, m, k):
        from constancy import _kernels

        tt = make_fm(n, m, ones_positions=range(m))
        rng = rngstreams.substream(99, "agreement")
        u = rng.random((200, k))
        idx = np.arange(1 << n, dtype=np.int64)
        verdicts = _kernels.classical_verdicts(tt.bits(), k, u, idx)
        for row, kernel_constant in zip(u, verdicts):
            outcome = classical_decide(tt, k, ReplayRng(row))
            assert (outcome.verdict is Verdict.CONSTANT) == bool(kernel_constant)


class TestWilson:
    def test_interval_brackets_estimate(self):
        low, high = wilson_interval(37, 1000)
        assert low < 37 / 1000 < high

    def test_degenerate_edges(self):
        assert wilson_interval(0, 100)[0] == pytest.approx(0.0, abs=1e-12)
        assert wilson_interval(100, 100)[1] == pytest.approx(1.0, abs=1e-12)

    def test_needs_trials(self):
        with pytest.raises(ValueError):
            wilson_interval(0, 0)
