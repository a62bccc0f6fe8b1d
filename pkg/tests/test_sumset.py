from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcdiff.errors import HypothesisError, InvalidBlockCount, TooSmall
from dcdiff.sets import make_set
from dcdiff.sigma import SigmaMap, find_sigma
from dcdiff.sumset import (
    block_pair_census,
    block_sizes,
    brute_force_block_pairs,
    decode_pair,
    enumerate_pairs,
    enumerate_quadruples,
    partition_blocks,
    quadruple_block_census,
    same_block_counts,
    sumset,
)

from oracles import brute_same_block_pairs, brute_sumset
from strategies import distinct_difference_sets, integer_sets


class TestSumset:
    def test_small_pair(self, small_pair):
        A, B = small_pair
        C = sumset(A, B)
        assert C.elements == (0, 1, 3, 5, 6, 8, 11, 12, 14)

    def test_self_sumset(self):
        A = make_set([0, 1, 3])
        assert sumset(A, A).elements == (0, 1, 2, 3, 4, 6)

    def test_zero_translates(self):
        B = make_set([2, 7, 19])
        assert sumset(make_set([0]), B) == B

    def test_rationals(self):
        C = sumset(make_set(["1/2", "1/3"]), make_set(["1/6"]))
        assert C.elements == (Fraction(1, 2), Fraction(2, 3))

    @given(integer_sets(max_size=8), integer_sets(max_size=8))
    @settings(max_examples=100)
    def test_matches_oracle(self, A, B):
        assert list(sumset(A, B)) == brute_sumset(A, B)


class TestPairs:
    def test_small_pair(self, small_pair):
        A, B = small_pair
        witnesses = enumerate_pairs(A, B)
        assert [sorted(w.pair) for w in witnesses] == [
            [0, 1], [1, 3], [5, 6], [6, 8], [11, 12], [12, 14]
        ]
        assert [(w.i, w.j) for w in witnesses][:3] == [(1, 1), (2, 1), (1, 2)]

    def test_minimal(self):
        witnesses = enumerate_pairs(make_set([0, 1]), make_set([0]))
        assert len(witnesses) == 1
        assert witnesses[0].pair == frozenset({0, 1})

    def test_repeated_difference_rejected(self):
        with pytest.raises(HypothesisError):
            enumerate_pairs(make_set([0, 1, 3, 4]), make_set([0]))

    def test_singleton_rejected(self):
        with pytest.raises(TooSmall):
            enumerate_pairs(make_set([0]), make_set([0]))

    def test_decode(self, small_pair):
        A, B = small_pair
        assert decode_pair(A, Fraction(5), Fraction(6), B) == (1, 2)

    def test_decode_unknown_difference(self, small_pair):
        A, B = small_pair
        assert decode_pair(A, Fraction(0), Fraction(3), B) is None

    def test_decode_membership_fails(self, small_pair):
        A, B = small_pair
        assert decode_pair(A, Fraction(1), Fraction(2), B) is None

    @given(
        distinct_difference_sets(max_size=50, max_gap=10**4),
        integer_sets(max_size=50, bound=10**6),
    )
    @settings(max_examples=500, deadline=None)
    def test_pairs_are_distinct_and_decode(self, A, B):
        witnesses = enumerate_pairs(A, B)
        assert len({w.pair for w in witnesses}) == (len(A) - 1) * len(B)
        for w in witnesses:
            assert decode_pair(A, w.low, w.high, B) == (w.i, w.j)


class TestQuadruples:
    def test_count(self):
        A, A2 = make_set([0, 1, 3]), make_set([0, 1, 3])
        B, B2 = make_set([0, 10]), make_set([0, 100])
        quads = enumerate_quadruples(A, A2, SigmaMap.identity(2), B, B2)
        assert quads.count == 8
        assert len({q.values for q in quads}) == 8

    def test_single_quadruple(self):
        A = make_set([0, 1])
        quads = enumerate_quadruples(A, A, SigmaMap.identity(1), make_set([0]), make_set([0]))
        assert quads.count == 1
        assert len(list(quads)) == 1

    def test_invalid_sigma(self):
        A, A2 = make_set([0, 1, 2]), make_set([0, 3, 6])
        with pytest.raises(HypothesisError):
            enumerate_quadruples(A, A2, SigmaMap.identity(2), make_set([0]), make_set([0]))

    @given(distinct_difference_sets(max_size=6), integer_sets(max_size=4), integer_sets(max_size=4))
    @settings(max_examples=40)
    def test_stream_matches_count(self, A, B, B2):
        A2 = make_set([3 * x for x in A])
        sigma = find_sigma(A, A2)
        quads = enumerate_quadruples(A, A2, sigma, B, B2)
        values = [q.values for q in quads]
        assert len(values) == quads.count
        assert len(set(values)) == quads.count


class TestBlocks:
    @pytest.mark.parametrize(
        "m, t, expected",
        [(9, 2, [5, 4]), (9, 1, [9]), (4, 4, [1, 1, 1, 1]), (10, 3, [4, 3, 3])],
    )
    def test_block_sizes(self, m, t, expected):
        assert block_sizes(m, t) == expected

    @pytest.mark.parametrize("t", [0, 10])
    def test_block_count_out_of_range(self, t):
        with pytest.raises(InvalidBlockCount):
            block_sizes(9, t)

    def test_partition_is_consecutive(self, small_pair):
        C = sumset(*small_pair)
        blocks = partition_blocks(C, 4)
        assert [list(b) for b in blocks] == [[0, 1, 2], [3, 4], [5, 6], [7, 8]]


class TestCensus:
    def test_single_block(self, small_pair):
        A, B = small_pair
        census = block_pair_census(A, B, 1)
        assert census.within_block_pairs == 6
        assert census.lower_bound == 6
        assert census.upper_bound == 36
        assert census.holds

    def test_minimal(self):
        census = block_pair_census(make_set([0, 1]), make_set([0]), 1)
        assert (census.lower_bound, census.within_block_pairs, census.upper_bound) == (1, 1, 1)

    def test_methods_agree(self, small_pair):
        A, B = small_pair
        for t in range(1, 10):
            fast = block_pair_census(A, B, t, method="runlength")
            slow = block_pair_census(A, B, t, method="subsets")
            assert fast == slow

    def test_unknown_method(self, small_pair):
        with pytest.raises(ValueError):
            block_pair_census(*small_pair, 1, method="guess")

    def test_same_block_counts_sum_to_census(self, small_pair):
        A, B = small_pair
        C = sumset(A, B)
        for t in (1, 2, 5):
            census = block_pair_census(A, B, t)
            assert sum(same_block_counts(A, B, C, t)) == census.within_block_pairs

    @given(distinct_difference_sets(max_size=12), integer_sets(max_size=12), st.data())
    @settings(max_examples=100)
    def test_census_inequality_and_oracle(self, A, B, data):
        m = len(sumset(A, B))
        k = len(A)
        choices = sorted({1, max(1, k // 2), max(1, min(k - 1, m))})
        choices.append(data.draw(st.integers(min_value=1, max_value=m)))
        for t in choices:
            census = block_pair_census(A, B, t, method="runlength")
            assert census.lower_bound <= census.within_block_pairs <= census.upper_bound
            assert census.within_block_pairs == brute_force_block_pairs(A, B, t)
            assert census.within_block_pairs == brute_same_block_pairs(A, B, census.block_sizes)


class TestQuadrupleCensus:
    def test_bounds_hold(self):
        A, A2 = make_set([0, 1, 3, 7, 12]), make_set([0, 2, 3, 7, 8])
        B, B2 = make_set([0, 5, 11]), make_set([0, 4])
        sigma = find_sigma(A, A2)
        for t in (1, 2):
            census = quadruple_block_census(A, A2, sigma, B, B2, t, t)
            assert census.lower_bound == (5 - 2 * t + 1) * 3 * 2
            assert census.holds

    def test_single_block_counts_every_quadruple(self):
        A, A2 = make_set([0, 1, 3]), make_set([0, 2, 3])
        B, B2 = make_set([0, 10]), make_set([0, 7])
        sigma = find_sigma(A, A2)
        census = quadruple_block_census(A, A2, sigma, B, B2, 1, 1)
        assert census.within_block_quadruples == 2 * 2 * 2
