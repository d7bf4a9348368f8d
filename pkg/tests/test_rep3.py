import pytest

from cauchon.diagram import Diagram, DiagramError, column, enumerate_diagrams, parse_diagram
from cauchon.excess_algebra import G1, G6, AlgebraElement, column_image, diagram_image
from cauchon.pfaffian import is_primitive_oracle
from cauchon.rep3 import (
    COLUMN_GENERATOR_EXPRESSIONS,
    COLUMN_MATRICES,
    IDENTITY4,
    NEG_IDENTITY4,
    PHI_GENERATORS,
    PRIMITIVE_CLASSES,
    SYMMETRIC_C123_CANDIDATE,
    SIGNED_IDENTITY,
    TEST_DIAGRAMS,
    MatrixPair,
    SignedPermutation,
    closed_form_P3,
    column_constant_mismatches,
    column_matrix,
    det_mod3,
    g3_closure,
    h_image,
    is_primitive_s4,
    mat,
    mat_scale,
    matrix_closure,
    parse_cycles,
    phi,
    phi_relation_failures,
    psi_letter,
    same_class,
    signed,
    verify_phi_relations,
)


def diag(*entries):
    return mat([[entries[i] if i == j else 0 for j in range(4)] for i in range(4)])


class TestColumnMatrices:
    def test_empty_column(self):
        assert column_matrix(()) == MatrixPair(IDENTITY4, IDENTITY4)

    def test_top_row(self):
        assert column_matrix((1,)) == MatrixPair(diag(1, 1, -1, -1), diag(-1, -1, 1, 1))

    def test_full_column_has_opposite_halves(self):
        plus, minus = column_matrix((1, 2, 3))
        assert minus == mat_scale(plus, -1)
        # entries are kept mod 3, so -1 reads as 2
        assert all(x % 3 in (1, 2) for row in plus for x in row)

    def test_full_column_matches_its_expression(self):
        assert phi(COLUMN_GENERATOR_EXPRESSIONS[7]) == COLUMN_MATRICES[7]
        # the symmetric candidate breaks that identity
        assert COLUMN_MATRICES[7].plus != SYMMETRIC_C123_CANDIDATE

    def test_stored_constants_consistent(self):
        assert column_constant_mismatches() == []

    def test_invertible(self):
        for pair in COLUMN_MATRICES.values():
            assert det_mod3(pair.plus) != 0 and det_mod3(pair.minus) != 0

    def test_parity_of_white_squares(self):
        for n in range(4):
            for d in enumerate_diagrams(3, n):
                plus, minus = phi(diagram_image(d))
                expected = plus if d.white_count % 2 == 0 else mat_scale(plus, -1)
                assert minus == expected


class TestRelations:
    def test_full_suite(self):
        assert phi_relation_failures() == []
        assert verify_phi_relations()

    def test_perturbed_generator(self):
        g1 = PHI_GENERATORS[0]
        bad_plus = [list(row) for row in g1.plus]
        bad_plus[0][0] = 1
        gens = (MatrixPair(mat(bad_plus), g1.minus),) + PHI_GENERATORS[1:]
        assert not verify_phi_relations(gens)

    def test_g3_sign(self):
        g3 = PHI_GENERATORS[2]
        assert {g3.plus, g3.minus} == {IDENTITY4, NEG_IDENTITY4}

    def test_g6(self):
        assert PHI_GENERATORS[5] == MatrixPair(NEG_IDENTITY4, NEG_IDENTITY4)


class TestClosure:
    def test_order(self):
        order, elements = g3_closure()
        assert order == 384 == len(elements)
        assert AlgebraElement.one(3) in elements

    def test_contains_product(self):
        _, elements = g3_closure()
        c1, c2, c12 = column_image(3, (1,)), column_image(3, (2,)), column_image(3, (1, 2))
        x = c1 * c2 * c12 * c12
        assert x in elements
        assert x == AlgebraElement.from_group(G1 * G6)

    def test_generators_have_finite_order(self):
        # a finite monoid generated by elements of finite order is a group
        one = AlgebraElement.one(3)
        for letter in range(8):
            g = column_image(3, letter)
            x, k = g, 1
            while x != one:
                x, k = x * g, k + 1
                assert k <= 384

    def test_matrix_image(self):
        assert len(matrix_closure()) == 384

    def test_bound(self):
        with pytest.raises(RuntimeError):
            g3_closure(bound=100)


class TestSignedPermutations:
    def test_cycle_convention(self):
        # (124) sends 1 to 2, 2 to 4 and 4 to 1
        perm = parse_cycles("(124)")
        assert perm == (2, 4, 3, 1)

    def test_product_order(self):
        a, b = signed("(12)"), signed("(23)")
        # the right factor acts first: 1 -> 1 -> 2
        assert (a * b).perm[0] == 2
        assert a * b == signed("(123)")

    def test_inverse(self):
        x = signed("(1243)", -1)
        assert x * x.inverse() == SIGNED_IDENTITY

    @pytest.mark.parametrize("rows,image", [
        ((1, 2, 3), ("(124)", -1)),
        ((), ("id", 1)),
        ((3,), ("(14)(23)", -1)),
        ((1,), ("(13)(24)", -1)),
        ((1, 2), ("(1243)", 1)),
    ])
    def test_letter_table(self, rows, image):
        assert psi_letter(rows) == signed(*image)


class TestImages:
    def test_two_letters(self):
        assert h_image(column(3, (1,)) * column(3, (2,))) == signed("(14)(23)", 1)

    def test_full_column_squared(self):
        x = h_image(column(3, (1, 2, 3)) * column(3, (1, 2, 3)))
        assert same_class(x, signed("(124)", 1))
        assert x == signed("(142)", 1)

    def test_empty(self):
        assert h_image(Diagram(3, ())) == SIGNED_IDENTITY

    def test_three_rows_only(self):
        with pytest.raises(DiagramError):
            h_image(parse_diagram("../.."))

    def test_classes(self):
        assert ((1, 1, 1, 1), 1) in PRIMITIVE_CLASSES
        assert signed("(1243)").cycle_type() == (4,)


class TestPrimitivity:
    @pytest.mark.parametrize("text,primitive", [
        ("#/#/#", True),
        (".#/#./##", False),
        (".#./.../...", False),
    ])
    def test_examples(self, text, primitive):
        assert is_primitive_s4(parse_diagram(text)) is primitive

    def test_single_columns(self):
        assert not is_primitive_s4(column(3, (1,)))
        assert is_primitive_s4(column(3, (1, 2)))

    def test_listed_diagrams(self):
        assert [want for _, want in TEST_DIAGRAMS] == [True, True, False, True, False]
        for d, want in TEST_DIAGRAMS:
            assert is_primitive_s4(d) is want is is_primitive_oracle(d)


class TestClosedForm:
    def test_small_values(self):
        assert [closed_form_P3(n) for n in range(1, 6)] == [4, 17, 70, 329, 1414]

    def test_brute_force(self):
        from cauchon.diagram import is_cauchon

        for n in range(1, 4):
            count = sum(
                1 for d in enumerate_diagrams(3, n) if is_cauchon(d) and is_primitive_oracle(d)
            )
            assert count == closed_form_P3(n)

    def test_domain(self):
        with pytest.raises(ValueError):
            closed_form_P3(0)


def test_signed_permutation_str():
    assert str(signed("(124)", -1)) == "((124),-1)"
    assert isinstance(signed("id"), SignedPermutation)
