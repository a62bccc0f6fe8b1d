from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dcdiff.errors import DcdiffError, DuplicateElement, EmptySet, IncompleteMap, InvalidMap, TooSmall
from dcdiff.sets import (
    SortedSet,
    apply_map,
    consecutive_differences,
    delta_ratio,
    evaluate_map,
    has_distinct_consecutive_differences,
    is_convex,
    is_sidon,
    make_set,
    polynomial_map,
    power_map,
    table_map,
)
from dcdiff.utils import parse_rational

from strategies import convex_sets, distinct_difference_sets, integer_sets


class TestMakeSet:
    def test_sorts_input(self):
        assert make_set([3, 1, 0]).elements == (0, 1, 3)

    def test_singleton_rational(self):
        assert make_set(["1/2"]).elements == (Fraction(1, 2),)

    def test_duplicate_raises(self):
        with pytest.raises(DuplicateElement):
            make_set([1, 1, 2])

    def test_unreduced_duplicate_raises(self):
        with pytest.raises(DuplicateElement):
            make_set(["1/2", "2/4"])

    def test_empty_raises(self):
        with pytest.raises(EmptySet):
            make_set([])

    def test_float_rejected(self):
        with pytest.raises(DcdiffError):
            make_set([0.5])

    def test_direct_construction_requires_order(self):
        with pytest.raises(DcdiffError):
            SortedSet((2, 1))

    def test_membership_and_repr(self):
        S = make_set(["0", "1/8", "3/8"])
        assert Fraction(1, 8) in S
        assert Fraction(1, 4) not in S
        assert repr(S) == "{0, 1/8, 3/8}"

    @given(integer_sets())
    @settings(max_examples=50)
    def test_strings_reparse_to_equal_set(self, S):
        assert make_set(S.to_strings()) == S


class TestDifferences:
    def test_integer_differences(self):
        assert list(consecutive_differences(make_set([0, 1, 3]))) == [1, 2]

    def test_differences_stored_reduced(self):
        diffs = consecutive_differences(make_set(["0", "1/8", "3/8"]))
        assert diffs.to_strings() == ["1/8", "1/4"]

    def test_singleton_too_small(self):
        with pytest.raises(TooSmall):
            consecutive_differences(make_set([5]))


class TestPredicates:
    @pytest.mark.parametrize(
        "values, expected",
        [([0, 1, 3, 7], True), ([0, 1, 2, 3], False), ([0, 1, 3, 4], False), ([4], True), ([0, 9], True)],
    )
    def test_is_convex(self, values, expected):
        assert is_convex(make_set(values)) is expected

    @pytest.mark.parametrize(
        "values, expected",
        [([0, 1, 3, 4], False), ([0, 1, 3, 7], True), ([0, 2, 3], True)],
    )
    def test_distinct_consecutive_differences(self, values, expected):
        assert has_distinct_consecutive_differences(make_set(values)) is expected

    @pytest.mark.parametrize(
        "values, expected",
        [
            ([0, 1, 2, 4, 8], Fraction(3, 5)),
            ([0, 1, 3, 7], Fraction(3, 4)),
            ([0, 1, 2, 3], Fraction(1, 4)),
        ],
    )
    def test_delta_ratio(self, values, expected):
        assert delta_ratio(make_set(values)) == expected

    def test_delta_ratio_needs_two_elements(self):
        with pytest.raises(TooSmall):
            delta_ratio(make_set([1]))

    @pytest.mark.parametrize(
        "values, expected",
        [([0, 1, 3], True), ([0, 1, 2], False), ([1, 2, 4, 8, 13], True)],
    )
    def test_is_sidon(self, values, expected):
        assert is_sidon(make_set(values)) is expected

    @given(convex_sets())
    @settings(max_examples=100)
    def test_convex_implies_distinct_differences(self, S):
        assert is_convex(S)
        assert has_distinct_consecutive_differences(S)

    @given(integer_sets(max_size=6, bound=10**6))
    @settings(max_examples=100)
    def test_sidon_implies_distinct_differences(self, S):
        if is_sidon(S):
            assert has_distinct_consecutive_differences(S)

    @pytest.mark.parametrize("values", [[0, 1, 3], [1, 2, 4, 8, 13], [0, 1, 4, 9, 11], [0, 2, 7, 8, 11]])
    def test_known_sidon_sets_have_distinct_differences(self, values):
        S = make_set(values)
        assert is_sidon(S)
        assert has_distinct_consecutive_differences(S)

    @given(integer_sets(min_size=2, max_size=8, bound=15))
    @settings(max_examples=150)
    def test_full_delta_iff_distinct_differences(self, S):
        full = delta_ratio(S) == Fraction(len(S) - 1, len(S))
        assert full == has_distinct_consecutive_differences(S)

    @given(distinct_difference_sets(max_size=10))
    @settings(max_examples=50)
    def test_full_delta_on_distinct_differences(self, S):
        assert delta_ratio(S) == Fraction(len(S) - 1, len(S))

    @given(
        integer_sets(min_size=2, max_size=10, bound=30),
        st.fractions(min_value=Fraction(1, 50), max_value=100, max_denominator=50),
        st.fractions(min_value=-100, max_value=100, max_denominator=50),
    )
    @settings(max_examples=150)
    def test_affine_invariance(self, S, u, v):
        T = S.affine(u, v)
        assert is_convex(T) == is_convex(S)
        assert has_distinct_consecutive_differences(T) == has_distinct_consecutive_differences(S)
        assert delta_ratio(T) == delta_ratio(S)
        assert is_sidon(T) == is_sidon(S)
        assert list(consecutive_differences(T)) == [u * d for d in consecutive_differences(S)]

    @given(convex_sets(max_size=8))
    @settings(max_examples=50)
    def test_affine_image_of_convex_set_is_convex(self, S):
        assert is_convex(S.affine(Fraction(3, 7), Fraction(-5, 2)))

    @pytest.mark.parametrize("scale", [0, -1])
    def test_affine_rejects_nonpositive_scale(self, scale):
        with pytest.raises(DcdiffError):
            make_set([0, 1, 3]).affine(scale, 1)

    @given(integer_sets(min_size=2))
    @settings(max_examples=50)
    def test_delta_ratio_range(self, S):
        delta = delta_ratio(S)
        assert Fraction(1, len(S)) <= delta < 1


class TestMaps:
    def test_square(self):
        assert apply_map(make_set([1, 2, 3]), power_map(2)).elements == (1, 4, 9)

    def test_cube(self):
        assert apply_map(make_set([1, 2, 3]), power_map(3)).elements == (1, 8, 27)

    def test_square_collision(self):
        with pytest.raises(DuplicateElement):
            apply_map(make_set([-1, 0, 1]), power_map(2))

    def test_power_exponent_validated(self):
        with pytest.raises(InvalidMap):
            power_map(1)

    def test_polynomial_constant_term_first(self):
        F = polynomial_map([1, "1/2", 1])
        assert evaluate_map(F, Fraction(2)) == 1 + 1 + 4

    def test_table(self):
        F = table_map({1: 5, 2: "7/2"})
        image = apply_map(make_set([1, 2]), F)
        assert image.elements == (Fraction(7, 2), 5)

    def test_table_missing_point(self):
        F = table_map({1: 5})
        with pytest.raises(IncompleteMap):
            apply_map(make_set([1, 2]), F)

    def test_table_rejects_equal_points(self):
        with pytest.raises(InvalidMap):
            table_map({"1/2": 1, "2/4": 3})


class TestParseRational:
    @pytest.mark.parametrize(
        "token, expected",
        [("3/8", Fraction(3, 8)), ("-2", Fraction(-2)), ("4/8", Fraction(1, 2)), (7, Fraction(7))],
    )
    def test_valid(self, token, expected):
        assert parse_rational(token) == expected

    @pytest.mark.parametrize("token", ["1/0", "abc", "1.5", "", True])
    def test_invalid(self, token):
        with pytest.raises(DcdiffError):
            parse_rational(token)
