import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from constancy import rngstreams
from constancy.tables import (
    N_MAX,
    FunctionClass,
    TruthTable,
    evaluate,
    make_fm,
    profile,
    random_function,
)


def bits_of(tt):
    return list(tt.bits())


class TestMakeFm:
    def test_constant(self):
        tt = make_fm(2, 0, majority_bit=0)
        assert bits_of(tt) == [0, 0, 0, 0]
        assert profile(tt).function_class is FunctionClass.CONSTANT

    def test_single_minority(self):
        tt = make_fm(2, 1, majority_bit=0, ones_positions={3})
        assert bits_of(tt) == [0, 0, 0, 1]
        assert profile(tt).m == 1

    def test_balanced(self):
        tt = make_fm(3, 4, majority_bit=0, ones_positions={0, 1, 2, 3})
        assert bits_of(tt) == [1, 1, 1, 1, 0, 0, 0, 0]
        assert profile(tt).function_class is FunctionClass.BALANCED

    def test_full_flip_is_constant(self):
        tt = make_fm(2, 4, majority_bit=0, ones_positions={0, 1, 2, 3})
        assert bits_of(tt) == [1, 1, 1, 1]
        assert profile(tt).function_class is FunctionClass.CONSTANT

    def test_random_placement_counts(self):
        rng = rngstreams.substream(3, "test")
        tt = make_fm(5, 7, majority_bit=1, rng=rng)
        assert tt.ones_count == 32 - 7

    def test_m_out_of_range(self):
        with pytest.raises(ValueError, match="m="):
            make_fm(2, 5)

    def test_wrong_position_count(self):
        with pytest.raises(ValueError, match="positions"):
            make_fm(2, 2, ones_positions={1})

    def test_duplicate_positions_rejected(self):
        with pytest.raises(ValueError, match="positions"):
            make_fm(2, 2, ones_positions=[1, 1])

    def test_position_overflow(self):
        with pytest.raises(ValueError):
            make_fm(2, 1, ones_positions={4})

    def test_negative_position_rejected(self):
        with pytest.raises(ValueError, match="positions"):
            make_fm(2, 1, ones_positions={-1})

    def test_n_above_cap(self):
        with pytest.raises(ValueError, match="N_MAX"):
            make_fm(N_MAX + 1, 0)

    def test_rng_required_for_random_placement(self):
        with pytest.raises(ValueError, match="rng"):
            make_fm(3, 2)


class TestRandomFunction:
    def test_deterministic_given_seed(self):
        draws = [random_function(2, rngstreams.substream(42, "t")) for _ in range(3)]
        assert draws[0] == draws[1] == draws[2]

    def test_chi_squared_uniform_n1(self):
        # 4 possible tables; chi-squared over 3 dof, 99.99% quantile ~ 21.1
        rng = rngstreams.substream(0, "chi2")
        counts = [0, 0, 0, 0]
        draws = 10_000
        for _ in range(draws):
            tt = random_function(1, rng)
            counts[tt.evaluate(0) * 2 + tt.evaluate(1)] += 1
        expected = draws / 4
        chi2 = sum((c - expected) ** 2 / expected for c in counts)
        assert chi2 < 21.1

    def test_balanced_rate_n3(self):
        # P(balanced) = C(8,4)/2**8 = 70/256; 3 sigma band at 1e5 draws
        rng = rngstreams.substream(1, "balanced-rate")
        draws = 100_000
        hits = sum(
            profile(random_function(3, rng)).function_class is FunctionClass.BALANCED
            for _ in range(draws)
        )
        p = 70 / 256
        sigma = (p * (1 - p) / draws) ** 0.5
        assert abs(hits / draws - p) < 3 * sigma

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_each_table_frequency_5_sigma(self, n):
        rng = rngstreams.substream(7, "uniformity")
        draws = 100_000
        counts = {}
        for _ in range(draws):
            tt = random_function(n, rng)
            counts[tt] = counts.get(tt, 0) + 1
        p = 2.0 ** -(1 << n)
        sigma = (draws * p * (1 - p)) ** 0.5
        assert len(counts) <= 1 << (1 << n)
        for count in counts.values():
            assert abs(count - draws * p) < 5 * sigma


class TestProfile:
    def test_constant_zero(self):
        tt = TruthTable.from_bits(2, [0, 0, 0, 0])
        prof = profile(tt)
        assert (prof.m, prof.function_class) == (0, FunctionClass.CONSTANT)
        assert prof.minority_bit == 0

    def test_constant_one_reports_its_value(self):
        prof = profile(TruthTable.from_bits(2, [1, 1, 1, 1]))
        assert prof.minority_bit == 1

    def test_balanced(self):
        prof = profile(TruthTable.from_bits(2, [0, 1, 1, 0]))
        assert (prof.m, prof.function_class) == (2, FunctionClass.BALANCED)
        assert prof.minority_bit == 0

    def test_unbalanced(self):
        prof = profile(TruthTable.from_bits(2, [0, 0, 0, 1]))
        assert (prof.m, prof.minority_bit, prof.function_class) == (
            1,
            1,
            FunctionClass.UNBALANCED,
        )

    @given(st.integers(1, 6), st.data())
    def test_minority_normalization(self, n, data):
        size = 1 << n
        m = data.draw(st.integers(0, size))
        positions = data.draw(
            st.sets(st.integers(0, size - 1), min_size=m, max_size=m)
        )
        for majority in (0, 1):
            prof = profile(make_fm(n, m, majority_bit=majority, ones_positions=positions))
            assert prof.m == min(m, size - m)


class TestEvaluate:
    def test_point_queries(self):
        tt = TruthTable.from_bits(2, [0, 1, 0, 1])
        assert evaluate(tt, 1) == 1
        assert evaluate(tt, 2) == 0

    def test_out_of_range(self):
        tt = TruthTable.from_bits(2, [0, 1, 0, 1])
        with pytest.raises(ValueError):
            tt.evaluate(4)
        with pytest.raises(ValueError):
            tt.evaluate(-1)

    @given(st.integers(1, 8), st.integers(0))
    def test_counts_partition(self, n, seed):
        tt = random_function(n, rngstreams.substream(seed, "partition"))
        assert tt.ones_count + int(np.sum(tt.bits() == 0)) == tt.size


class TestSerialization:
    def test_round_trip(self):
        tt = make_fm(3, 3, ones_positions={0, 5, 7})
        assert TruthTable.from_text(tt.to_text()) == tt

    def test_text_format(self):
        tt = TruthTable.from_bits(1, [0, 1])
        assert tt.to_text() == "n=1\n01\n"

    @pytest.mark.parametrize(
        "payload",
        ["", "n=2\n001\n", "n=2\n01x1\n", "m=2\n0011\n", "n=0\n\n", "n=boom\n01\n"],
    )
    def test_rejects_malformed(self, payload):
        with pytest.raises(ValueError):
            TruthTable.from_text(payload)


class TestImmutability:
    def test_attributes_frozen(self):
        tt = TruthTable.from_bits(1, [0, 1])
        with pytest.raises(AttributeError):
            tt.n = 2

    def test_bits_returns_copy(self):
        tt = TruthTable.from_bits(1, [0, 1])
        view = tt.bits()
        view[0] = 1
        assert tt.evaluate(0) == 0

    def test_hashable(self):
        a = TruthTable.from_bits(1, [0, 1])
        b = TruthTable.from_bits(1, [0, 1])
        assert len({a, b}) == 1
