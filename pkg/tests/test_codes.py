"""
Tests for the trace codes C1 and C2: single codewords, cyclic structure, the m = 2k
redundancy and exact weight distributions by enumeration.
"""

from unittest.mock import patch

import numpy as np
import pytest

from src.algebra.gf import irreducible_polynomials, make_field
from src.codes.enumeration import DirectZeroCounter, TransformZeroCounter, linear_functionals
from src.codes.reference import REFERENCE_CASES
from src.codes.theory import code_spec, theoretical_wd
from src.codes.trace_codes import (
    codeword_vector,
    degenerate_kernel,
    distinct_codewords,
    empirical_wd,
    empirical_wd_c1,
    empirical_wd_c2,
    shift_parameters,
    weight_c1,
    weight_c2,
)
from src.codes.types import CodeFamily, CodeSpec, TheoreticalWD, WeightDistribution
from src.errors import InvalidParameterError, PrecisionError, WorkLimitExceeded

# Fixed strategy-comparison sets: even s, m = 2k, and large p
STRATEGY_FIXED_PARAMS = [
    (3, 4, 1), (3, 4, 2), (5, 4, 2), (5, 4, 3), (5, 3, 2), (7, 2, 1), (11, 2, 1),
]

_STRATEGY_POOL = [
    (p, m, k)
    for p in (3, 5, 7, 11, 13, 17, 19, 23)
    for m in range(2, 6)
    if p ** m <= 5 ** 4
    for k in range(1, m)
]
# Ten further sets drawn with a fixed seed
STRATEGY_SAMPLED_PARAMS = [
    _STRATEGY_POOL[i]
    for i in sorted(np.random.default_rng(2718).choice(len(_STRATEGY_POOL), 10, replace=False))
]


@pytest.fixture(scope="module")
def f9():
    return make_field(3, 2)


@pytest.fixture(scope="module")
def f27():
    return make_field(3, 3)


def _hamming(vector):
    return int(np.count_nonzero(vector))


class TestSingleCodewords:
    """Test weight_c1, weight_c2 and codeword_vector."""

    def test_zero_codewords(self, f27):
        assert weight_c1(f27, 1, f27.zero, f27.zero) == 0
        assert weight_c2(f27, 1, f27.zero, 0) == 0

    def test_linear_codewords(self, f27):
        """a = 0, b != 0 gives weight (p-1) p^(m-1)."""
        for b_index in range(1, 27):
            assert weight_c1(f27, 1, f27.zero, f27.from_int(b_index)) == 18

    def test_constant_codewords(self, f27):
        """a = 0, lam != 0 gives the full weight p^m - 1."""
        assert weight_c2(f27, 1, f27.zero, 1) == 26
        assert weight_c2(f27, 1, f27.zero, 2) == 26

    def test_vector_weight_matches_c1(self, f9):
        for a_index in range(9):
            for b_index in range(9):
                a, b = f9.from_int(a_index), f9.from_int(b_index)
                vector = codeword_vector(f9, 1, CodeFamily.C1, a, b)
                assert vector.shape == (8,)
                assert _hamming(vector) == weight_c1(f9, 1, a, b)

    def test_vector_weight_matches_c2(self, f27):
        for k in (1, 2):
            for a_index in range(27):
                for lam in range(3):
                    a = f27.from_int(a_index)
                    vector = codeword_vector(f27, k, "c2", a, lam)
                    assert _hamming(vector) == weight_c2(f27, k, a, lam)

    def test_coordinate_order(self, f9):
        """Coordinate i is evaluated at alpha^i."""
        a, b = f9.one, f9.alpha
        vector = codeword_vector(f9, 1, CodeFamily.C1, a, b)
        expected = [
            (f9.trace_table[f9.to_int(f9.pow(f9.exp(i), 4))]
             + f9.trace_table[f9.to_int(f9.mul(b, f9.exp(i)))]) % 3
            for i in range(8)
        ]
        assert vector.tolist() == expected


class TestCyclicStructure:
    """Shifting a codeword stays inside the code."""

    @pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2)])
    def test_c1_shift(self, p, m):
        ctx = make_field(p, m)
        for k in range(1, m):
            for a_index in range(ctx.q):
                for b_index in range(0, ctx.q, 2):
                    a, b = ctx.from_int(a_index), ctx.from_int(b_index)
                    vector = codeword_vector(ctx, k, CodeFamily.C1, a, b)
                    sa, sb = shift_parameters(ctx, k, CodeFamily.C1, a, b)
                    shifted = codeword_vector(ctx, k, CodeFamily.C1, sa, sb)
                    assert np.array_equal(shifted, np.roll(vector, -1))

    @pytest.mark.parametrize("p,m", [(3, 3), (3, 4), (5, 3)])
    def test_c2_shift(self, p, m):
        ctx = make_field(p, m)
        for k in range(1, m):
            for a_index in range(ctx.q):
                for lam in range(p):
                    a = ctx.from_int(a_index)
                    vector = codeword_vector(ctx, k, CodeFamily.C2, a, lam)
                    sa, slam = shift_parameters(ctx, k, CodeFamily.C2, a, lam)
                    assert slam == lam
                    shifted = codeword_vector(ctx, k, CodeFamily.C2, sa, slam)
                    assert np.array_equal(shifted, np.roll(vector, -1))


class TestDegenerateRedundancy:
    """When m = 2k, a and a + t with t^(p^k) = -t give the same codewords."""

    def test_kernel_sizes(self):
        assert len(degenerate_kernel(make_field(3, 2), 1)) == 3
        assert len(degenerate_kernel(make_field(3, 4), 2)) == 9
        assert len(degenerate_kernel(make_field(3, 3), 1)) == 1

    def test_kernel_shifts_leave_codewords_unchanged(self, f9):
        kernel = degenerate_kernel(f9, 1)
        for a_index in range(9):
            a = f9.from_int(a_index)
            base = codeword_vector(f9, 1, CodeFamily.C1, a, f9.one)
            for t in kernel:
                moved = codeword_vector(f9, 1, CodeFamily.C1, f9.add(a, t), f9.one)
                assert np.array_equal(moved, base)

    @pytest.mark.parametrize("p,m,k,family,expected", [
        (3, 2, 1, CodeFamily.C1, 27),
        (3, 2, 1, CodeFamily.C2, 9),
        (3, 3, 1, CodeFamily.C1, 729),
        (3, 3, 1, CodeFamily.C2, 81),
        (3, 4, 2, CodeFamily.C2, 27),
    ])
    def test_distinct_codewords(self, p, m, k, family, expected):
        """The codebook size is p^dimension."""
        ctx = make_field(p, m)
        assert distinct_codewords(ctx, k, family) == expected
        assert expected == p ** code_spec(p, m, k, family).dimension

    def test_codebook_limit(self):
        with pytest.raises(WorkLimitExceeded):
            distinct_codewords(make_field(3, 6), 1, CodeFamily.C1)


class TestZeroCounters:
    """Both C1 engines count zeros of Tr(a x^(p^k+1) + b x) identically."""

    @pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (3, 4)])
    def test_engines_agree_with_brute_force(self, p, m):
        ctx = make_field(p, m)
        direct = DirectZeroCounter(ctx)
        transform = TransformZeroCounter(ctx)
        functionals = linear_functionals(ctx)
        rng = np.random.default_rng(p * 100 + m)
        for _ in range(5):
            values = rng.integers(0, p, size=ctx.q)
            linear = (functionals @ ctx.coords.T) % p
            expected = np.count_nonzero((values[None, :] + linear) % p == 0, axis=1)
            assert np.array_equal(direct.zero_counts(values), expected)
            assert np.array_equal(transform.zero_counts(values), expected)

    def test_linear_functionals(self, f27):
        """Row b gives Tr(b x) as a function of the coordinates of x."""
        functionals = linear_functionals(f27)
        for b_index in range(27):
            for x_index in range(27):
                lhs = int(functionals[b_index] @ f27.coords[x_index]) % 3
                product = f27.mul(f27.from_int(b_index), f27.from_int(x_index))
                assert lhs == f27.trace_table[f27.to_int(product)]

    def test_precision_guard(self, f27):
        """A residual at or above the tolerance aborts instead of rounding."""
        with patch("src.codes.enumeration.ROUNDING_TOLERANCE", 0.0):
            with pytest.raises(PrecisionError):
                TransformZeroCounter(f27).zero_counts(np.zeros(27, dtype=np.int64))


class TestEmpiricalDistributions:
    """Exact weight distributions by enumeration."""

    @pytest.mark.parametrize("strategy", ["direct", "transform"])
    def test_c1_f9(self, f9, strategy):
        wd = empirical_wd_c1(f9, 1, strategy=strategy)
        assert wd.counts == {0: 1, 5: 16, 6: 8, 8: 2}

    def test_c2_odd_m(self, f27):
        assert empirical_wd_c2(f27, 1).counts == {0: 1, 14: 26, 18: 26, 20: 26, 26: 2}

    def test_c2_f9(self, f9):
        assert empirical_wd_c2(f9, 1).counts == {0: 1, 4: 4, 8: 4}

    @pytest.mark.parametrize("case", [c for c in REFERENCE_CASES if c.family is CodeFamily.C2],
                             ids=lambda c: c.name)
    def test_c2_reference_cases(self, case):
        ctx = make_field(case.p, case.m)
        wd = empirical_wd_c2(ctx, case.k)
        assert wd.counts == case.counts
        assert wd.minimum_distance == case.minimum_distance

    @pytest.mark.parametrize("p,m,k", [
        (3, 2, 1), (3, 4, 1), (3, 4, 2), (3, 4, 3), (5, 2, 1), (7, 2, 1),
    ])
    def test_c1_matches_theory(self, p, m, k):
        ctx = make_field(p, m)
        assert empirical_wd_c1(ctx, k).counts == theoretical_wd(p, m, k, "C1").counts

    @pytest.mark.parametrize("p,m", [(3, 3), (3, 4), (3, 5), (5, 2), (5, 3), (7, 2), (3, 6)])
    def test_c2_matches_theory_for_every_k(self, p, m):
        ctx = make_field(p, m)
        for k in range(1, m):
            assert empirical_wd_c2(ctx, k).counts == theoretical_wd(p, m, k, "C2").counts

    @pytest.mark.parametrize("p,m,k", [(3, 3, 1), (3, 3, 2), (3, 5, 2), (5, 3, 1)])
    def test_strategies_agree_for_odd_s(self, p, m, k):
        """No closed form for odd-s C1, but both engines must still agree."""
        ctx = make_field(p, m)
        direct = empirical_wd_c1(ctx, k, strategy="direct")
        transform = empirical_wd_c1(ctx, k, strategy="transform")
        assert direct.counts == transform.counts
        assert direct.total == p ** (2 * m)

    @pytest.mark.parametrize("p,m,k", STRATEGY_FIXED_PARAMS + STRATEGY_SAMPLED_PARAMS)
    def test_strategies_agree(self, p, m, k):
        """Direct and transform enumeration give identical C1 distributions."""
        ctx = make_field(p, m)
        direct = empirical_wd_c1(ctx, k, strategy="direct")
        transform = empirical_wd_c1(ctx, k, strategy="transform")
        assert direct.counts == transform.counts
        assert direct.total == p ** direct.spec.dimension

    def test_modulus_does_not_matter(self):
        """Weight distributions are invariant under the choice of modulus."""
        moduli = list(irreducible_polynomials(3, 4))[:2]
        fields = [make_field(3, 4, modulus) for modulus in moduli]
        assert fields[0].modulus != fields[1].modulus
        for family in (CodeFamily.C1, CodeFamily.C2):
            first, second = (empirical_wd(ctx, 1, family) for ctx in fields)
            assert first.counts == second.counts

    def test_workers_do_not_change_result(self):
        ctx = make_field(3, 4)
        assert empirical_wd_c1(ctx, 1, workers=2).counts == empirical_wd_c1(ctx, 1).counts
        assert empirical_wd_c2(ctx, 1, workers=3).counts == empirical_wd_c2(ctx, 1).counts

    def test_work_limit(self, f27):
        with pytest.raises(WorkLimitExceeded):
            empirical_wd_c1(f27, 1, work_limit=100)
        with pytest.raises(WorkLimitExceeded):
            empirical_wd_c2(f27, 1, work_limit=10)

    def test_unknown_strategy(self, f9):
        with pytest.raises(InvalidParameterError):
            empirical_wd_c1(f9, 1, strategy="fast")

    @pytest.mark.slow
    @pytest.mark.parametrize("strategy", ["direct", "transform"])
    @pytest.mark.parametrize("case", [c for c in REFERENCE_CASES if c.family is CodeFamily.C1],
                             ids=lambda c: c.name)
    def test_c1_reference_cases(self, case, strategy):
        ctx = make_field(case.p, case.m)
        wd = empirical_wd_c1(ctx, case.k, strategy=strategy)
        assert wd.counts == case.counts
        assert wd.parameters == (case.p ** case.m - 1, case.dimension, case.minimum_distance)

    @pytest.mark.slow
    @pytest.mark.parametrize("k", [3, 5])
    def test_c1_matches_theory_on_f729(self, k):
        ctx = make_field(3, 6)
        assert empirical_wd_c1(ctx, k).counts == theoretical_wd(3, 6, k, "C1").counts


class TestWeightDistribution:
    """Test the WeightDistribution container."""

    def _spec(self):
        return CodeSpec(family=CodeFamily.C2, p=3, m=3, k=1, n=26, dimension=4)

    def test_sorts_and_drops_zero_counts(self):
        wd = WeightDistribution(spec=self._spec(), counts={26: 2, 0: 1, 14: 26, 15: 0})
        assert list(wd.counts) == [0, 14, 26]

    def test_rejects_weight_above_length(self):
        with pytest.raises(InvalidParameterError):
            WeightDistribution(spec=self._spec(), counts={27: 1})

    def test_rejects_negative_count(self):
        with pytest.raises(InvalidParameterError):
            WeightDistribution(spec=self._spec(), counts={14: -1})

    def test_properties(self):
        wd = WeightDistribution(spec=self._spec(), counts={0: 1, 14: 26, 18: 26, 20: 26, 26: 2})
        assert wd.total == 81
        assert wd.minimum_distance == 14
        assert wd.nonzero_weights == [14, 18, 20, 26]
        assert wd.parameters == (26, 4, 14)

    def test_dict_round_trip(self):
        wd = theoretical_wd(3, 3, 1, "C2")
        data = wd.to_dict()
        assert data["family"] == "C2"
        assert data["weights"][0] == {"w": 0, "count": 1}
        assert data["formula"] == "c2-odd-m"
        restored = TheoreticalWD.from_dict(data)
        assert restored.same_counts(wd)
        assert restored.formula == wd.formula

    def test_csv(self):
        wd = WeightDistribution(spec=self._spec(), counts={0: 1, 14: 26})
        assert wd.to_csv() == "w,count\n0,1\n14,26\n"

    def test_table(self):
        wd = WeightDistribution(spec=self._spec(), counts={0: 1, 14: 26})
        assert wd.to_table().splitlines() == ["weight  count", "     0  1", "    14  26"]

    def test_family_parse(self):
        assert CodeFamily.parse("c1") is CodeFamily.C1
        assert CodeFamily.parse(CodeFamily.C2) is CodeFamily.C2
        with pytest.raises(InvalidParameterError):
            CodeFamily.parse("c9")
