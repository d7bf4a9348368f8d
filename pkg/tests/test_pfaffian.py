import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cauchon.diagram import BudgetExceeded, Diagram, column, enumerate_diagrams, parse_diagram, white_squares
from cauchon.pfaffian import (
    Decomposition,
    DecompositionError,
    PowerKind,
    concat_decomposition,
    decomposition_sign,
    decompositions,
    determinant,
    excess,
    inversions,
    is_decomposition,
    is_primitive_oracle,
    is_zero_or_signed_power_of_two,
    matching_sign,
    perfect_matchings,
    pfaffian_decompositions,
    pfaffian_matchings,
    power_of_four_class,
    skew_adjacency,
)

LABELLED = parse_diagram(".#../..#./.#.#")
FIVE_WHITE = parse_diagram(".###/##.#/.#..")
DECOMPOSED = parse_diagram("....#/..#../#...#/.#...")
ALL_WHITE_2x2 = parse_diagram("../..")


def gauss_det(mat):
    """Independent reference: elimination over the rationals."""
    a = [[Fraction(x) for x in row] for row in mat]
    n = len(a)
    det = Fraction(1)
    for k in range(n):
        pivot = next((r for r in range(k, n) if a[r][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det *= a[k][k]
        for r in range(k + 1, n):
            f = a[r][k] / a[k][k]
            for c in range(k, n):
                a[r][c] -= f * a[k][c]
    return int(det)


def small_diagrams(max_rows=3, max_cols=3):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.lists(st.integers(0, (1 << m) - 1), max_size=max_cols).map(
            lambda cols: Diagram(m, tuple(cols))
        )
    )


class TestSkewAdjacency:
    def test_worked_matrix(self):
        assert skew_adjacency(FIVE_WHITE) == [
            [0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0],
            [-1, 0, 0, 1, 1],
            [0, -1, -1, 0, 1],
            [0, 0, -1, -1, 0],
        ]

    def test_vertical_pair(self):
        assert skew_adjacency(column(2, (1, 2))) == [[0, 1], [-1, 0]]

    def test_all_black(self):
        assert skew_adjacency(parse_diagram("##/##")) == []

    @given(small_diagrams(4, 4))
    def test_skew_symmetric(self, d):
        mat = skew_adjacency(d)
        k = len(mat)
        assert all(mat[i][j] == -mat[j][i] for i in range(k) for j in range(k))


class TestDeterminant:
    def test_odd_dimension(self):
        assert determinant(skew_adjacency(FIVE_WHITE)) == 0

    def test_two_by_two(self):
        assert determinant([[0, 1], [-1, 0]]) == 1

    def test_three_by_two_all_white(self):
        # Pfaffian is -2, so the determinant is 4
        d = parse_diagram("../../..")
        assert determinant(skew_adjacency(d)) == 4
        assert pfaffian_matchings(d) == -2

    def test_empty_matrix(self):
        assert determinant([]) == 1

    def test_needs_pivoting(self):
        assert determinant([[0, 2], [3, 0]]) == -6
        assert determinant([[0, 0], [1, 1]]) == 0

    def test_not_square(self):
        with pytest.raises(ValueError):
            determinant([[1, 2]])

    @given(st.integers(1, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_against_rational_elimination(self, mat):
        assert determinant(mat) == gauss_det(mat)


class TestMatchings:
    def test_known_matching_present(self):
        assert ((1, 3), (2, 8), (4, 7), (5, 6)) in set(perfect_matchings(LABELLED))

    def test_odd_white_count(self):
        assert list(perfect_matchings(FIVE_WHITE)) == []

    def test_two_by_two(self):
        assert sorted(perfect_matchings(ALL_WHITE_2x2)) == [((1, 2), (3, 4)), ((1, 3), (2, 4))]

    def test_matchings_distinct_and_valid(self):
        d = parse_diagram("..../..../...#")
        found = list(perfect_matchings(d))
        assert len(found) == len(set(found))
        squares = dict(enumerate(white_squares(d), start=1))
        for pm in found:
            flat = [x for e in pm for x in e]
            assert sorted(flat) == list(range(1, d.white_count + 1))
            for i, j in pm:
                a, b = squares[i], squares[j]
                assert a[0] == b[0] or a[1] == b[1]

    @pytest.mark.parametrize("pm,sign", [
        (((1, 2), (3, 4)), 1),
        (((1, 3), (2, 4)), -1),
        (((1, 4), (2, 3)), 1),
    ])
    def test_sign(self, pm, sign):
        assert matching_sign(pm) == sign

    def test_sign_needs_ordered_edges(self):
        with pytest.raises(ValueError):
            matching_sign(((2, 1),))

    def test_inversions(self):
        assert inversions((1, 3, 2, 4)) == 1
        assert inversions((1, 4, 2, 3)) == 2


class TestPfaffian:
    def test_column_pair(self):
        assert pfaffian_matchings(column(2, (1, 2))) == 1

    def test_two_by_two_cancels(self):
        assert pfaffian_matchings(ALL_WHITE_2x2) == 0

    def test_odd_is_zero(self):
        assert pfaffian_matchings(FIVE_WHITE) == 0

    def test_budget(self):
        with pytest.raises(BudgetExceeded):
            pfaffian_matchings(parse_diagram("..../...."), max_white=4)

    def test_four_by_four_all_white(self):
        d = parse_diagram("..../..../..../....")
        assert sum(1 for _ in perfect_matchings(d)) == 2016
        assert pfaffian_matchings(d) == 0 == pfaffian_decompositions(d)


class TestDecompositions:
    def test_known_decomposition(self):
        dec = Decomposition(frozenset({1, 5, 6, 8, 9, 10, 13, 15}), frozenset({2, 3, 4, 7, 11, 12, 14}))
        assert is_decomposition(DECOMPOSED, dec)
        assert dec in set(decompositions(DECOMPOSED))

    def test_all_black(self):
        assert list(decompositions(parse_diagram("##/##"))) == [Decomposition(frozenset(), frozenset())]

    def test_column_pair(self):
        got = set(decompositions(column(2, (1, 2))))
        assert got == {
            Decomposition(frozenset(), frozenset({1, 2})),
            Decomposition(frozenset({1, 2}), frozenset()),
        }

    def test_not_a_decomposition(self):
        d = column(2, (1, 2))
        bad = Decomposition(frozenset({1}), frozenset({2}))
        assert not is_decomposition(d, bad)
        with pytest.raises(DecompositionError):
            decomposition_sign(d, bad)

    @pytest.mark.parametrize("d,V,H,sign", [
        (column(2, (1, 2)), {1, 2}, set(), 1),
        (parse_diagram(".."), set(), {1, 2}, 1),
        (ALL_WHITE_2x2, {1, 2, 3, 4}, set(), -1),
    ])
    def test_sign(self, d, V, H, sign):
        assert decomposition_sign(d, Decomposition(frozenset(V), frozenset(H))) == sign

    def test_excess(self):
        assert excess(LABELLED, frozenset(range(1, 9))) == 0b011

    def test_sums(self):
        assert pfaffian_decompositions(column(2, (1, 2))) == 1
        assert pfaffian_decompositions(ALL_WHITE_2x2) == 0
        assert pfaffian_decompositions(Diagram(3, ())) == 1

    def test_concatenated_decomposition(self):
        left = parse_diagram(".#.#/..#./#...")
        right = parse_diagram("..#/..#/##.")
        joined = concat_decomposition(
            left, Decomposition(frozenset({1, 3, 5, 8}), frozenset({2, 4, 6, 7})),
            right, Decomposition(frozenset({1, 3}), frozenset({2, 4, 5})),
        )
        assert joined == Decomposition(frozenset({1, 3, 5, 7, 8, 12}), frozenset({2, 4, 6, 9, 10, 11, 13}))
        assert is_decomposition(left * right, joined)


class TestPrimitivity:
    def test_all_black_column(self):
        assert is_primitive_oracle(parse_diagram("#/#/#"))

    def test_nonprimitive_example(self):
        assert not is_primitive_oracle(parse_diagram(".#./.../..."))

    def test_two_by_two(self):
        assert not is_primitive_oracle(ALL_WHITE_2x2)


class TestPowers:
    def test_classes(self):
        assert power_of_four_class(0).kind is PowerKind.ZERO
        assert power_of_four_class(16) == (PowerKind.POWER_OF_FOUR, 2)
        assert power_of_four_class(1) == (PowerKind.POWER_OF_FOUR, 0)
        assert power_of_four_class(12).kind is PowerKind.VIOLATION
        assert power_of_four_class(8).kind is PowerKind.VIOLATION
        assert power_of_four_class(-4).kind is PowerKind.VIOLATION

    def test_signed_powers(self):
        assert all(map(is_zero_or_signed_power_of_two, (0, 1, -1, 2, -8, 64)))
        assert not any(map(is_zero_or_signed_power_of_two, (3, -6, 12)))


def test_identities_exhaustive():
    for m, n in itertools.product(range(1, 4), repeat=2):
        for d in enumerate_diagrams(m, n):
            pf = pfaffian_matchings(d)
            det = determinant(skew_adjacency(d))
            assert pf * pf == det
            assert pfaffian_decompositions(d) == pf
            assert is_zero_or_signed_power_of_two(pf)
            assert power_of_four_class(det).kind is not PowerKind.VIOLATION


@settings(max_examples=60, deadline=None)
@given(small_diagrams(4, 4))
def test_identities_random(d):
    pf = pfaffian_matchings(d)
    assert pf * pf == determinant(skew_adjacency(d)) == gauss_det(skew_adjacency(d))
    assert pfaffian_decompositions(d) == pf
    assert (pf == 0) == (pf % 3 == 0)
