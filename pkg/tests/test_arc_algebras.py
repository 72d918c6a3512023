import itertools
from types import SimpleNamespace

import pytest

from src.algebra.base import ArcElement, BasisVector
from src.algebra.even_arc import EvenArcAlgebra, FrobElement
from src.algebra.odd_arc import (OddArcAlgebra, diagonal_subalgebra, mod2_agreement,
                                 nonassoc_witness, parity, supercommutation_report)
from src.algebra.tables import (load_golden, multiplication_table, parse_basis,
                                parse_element, table_record)
from src.diagrams.chronology import enumerate_all_choices
from src.errors import DiagramError, GeneratorError, GradingError, SizeError

A, B = 0, 1


class TestGoldenTables:
    @pytest.mark.parametrize("side", ["a", "b"])
    def test_odd(self, odd2, side):
        assert table_record(odd2, side, "odd") == load_golden("odd", side)

    @pytest.mark.parametrize("side", ["a", "b"])
    def test_even(self, even2, side):
        assert table_record(even2, side, "even") == load_golden("even", side)

    @pytest.mark.parametrize("side", ["a", "b"])
    def test_twisted(self, twisted2, side):
        assert table_record(twisted2, side, "twisted") == load_golden("twisted", side)

    def test_signed_entries(self, odd2):
        table = multiplication_table(odd2, "a")
        assert table.loc["a2", "a1"] == "-a1^a2"
        assert table.loc["1_ba", "1_ab"] == "-b1 + b2"
        assert table.loc["a1^a2", "1_ab"] == "0"
        assert table.shape == (6, 6)


class TestOddProducts:
    def test_unit_is_two_sided(self, odd2):
        one = odd2.unit()
        for bv in odd2.basis():
            x = ArcElement.basis(2, bv)
            assert odd2.multiply(one, x) == x == odd2.multiply(x, one)

    def test_dimension(self, odd2):
        assert len(odd2.basis()) == 12

    def test_product_is_graded(self, odd2):
        for x, y in itertools.product(odd2.basis(), repeat=2):
            for k in odd2.product_basis(x, y):
                assert odd2.qdeg(k) == odd2.qdeg(x) + odd2.qdeg(y)

    def test_product_vanishes_off_matching_pieces(self, odd2):
        assert odd2.product_basis(BasisVector(A, A, 0), BasisVector(B, A, 0)) == {}

    def test_parse_element(self, odd2):
        x = parse_element(odd2, "1_ba")
        y = parse_element(odd2, "1_ab")
        assert odd2.multiply(x, y) == parse_element(odd2, "b2,-1*b1")
        assert parse_basis(odd2, "0|1|1") == parse_basis(odd2, "c_ab")
        with pytest.raises(DiagramError):
            parse_element(odd2, "z9")
        with pytest.raises(DiagramError):
            parse_basis(odd2, "0|1|2")

    def test_multiply_pieces(self, odd2):
        b1 = odd2.circle(B, B, 1).piece(B, B)
        one_ba = odd2.one(B, A).piece(B, A)
        out = odd2.multiply_pieces(B, B, A, b1, one_ba)
        assert out.terms == {0b1: 1}

    def test_mixed_n_rejected(self, odd2, odd3):
        with pytest.raises(GeneratorError):
            odd2.multiply(odd2.unit(), odd3.unit())

    def test_parity_of_inhomogeneous(self, odd2):
        with pytest.raises(GeneratorError):
            odd2.parity(parse_element(odd2, "1_a,a1"))
        with pytest.raises(GeneratorError):
            parity(parse_element(odd2, "1_a,a1").piece(A, A))
        assert parity(parse_element(odd2, "a1,a2").piece(A, A)) == 1

    def test_products_keep_quantum_degree(self):
        algebra = OddArcAlgebra(2)
        algebra.build_cache()
        for (c, b, a), table in algebra._constants.items():
            for (mx, my), result in table.items():
                expected = algebra.qdeg(BasisVector(c, b, mx)) + algebra.qdeg(BasisVector(b, a, my))
                assert {algebra.qdeg(BasisVector(c, a, m)) for m in result} == {expected}

    def test_degree_violation_raises(self, monkeypatch):
        monkeypatch.setattr("src.algebra.odd_arc.execute",
                            lambda ch, x: SimpleNamespace(terms={0: 1}))
        with pytest.raises(GradingError):
            OddArcAlgebra(2).constants(A, A, A)


class TestNonassociativity:
    def test_n2(self, odd2):
        w = nonassoc_witness(odd2)
        assert w.report
        assert w.lhs == -w.rhs
        assert w.lhs == parse_element(odd2, "-1*b1^b2")

    def test_n3(self, odd3):
        w = nonassoc_witness(odd3)
        assert w.report and w.lhs

    @pytest.mark.slow
    def test_n4(self):
        assert nonassoc_witness(OddArcAlgebra(4)).report

    def test_every_choice_n2(self):
        for choice in enumerate_all_choices(2):
            assert nonassoc_witness(OddArcAlgebra(2, choice)).report

    def test_n1_has_no_witness(self, odd1):
        with pytest.raises(SizeError):
            nonassoc_witness(odd1)


class TestStructureChecks:
    @pytest.mark.parametrize("fixture", ["odd1", "odd2", "odd3"])
    def test_diagonal_is_exterior(self, fixture, request):
        assert diagonal_subalgebra(request.getfixturevalue(fixture))

    @pytest.mark.parametrize("fixture", ["odd2", "odd3"])
    def test_supercommutation(self, fixture, request):
        assert supercommutation_report(request.getfixturevalue(fixture))

    def test_mod2_n2(self, odd2, even2):
        assert mod2_agreement(odd2, even2)

    def test_mod2_n3(self, odd3):
        assert mod2_agreement(odd3)

    def test_mod2_every_choice_n2(self, even2):
        for choice in enumerate_all_choices(2):
            assert mod2_agreement(OddArcAlgebra(2, choice), even2)


class TestEvenAlgebra:
    def test_even_is_associative_n2(self, even2):
        basis = even2.basis()
        for x, y, z in itertools.product(basis, repeat=3):
            if x.bottom != y.top or y.bottom != z.top:
                continue
            xy = ArcElement(2, even2.product_basis(x, y))
            yz = ArcElement(2, even2.product_basis(y, z))
            assert even2.multiply(xy, ArcElement.basis(2, z)) == \
                even2.multiply(ArcElement.basis(2, x), yz)

    def test_even_multiply(self, even2):
        upper = FrobElement(even2.diagram(B, A).circles, {0: 1})
        lower = FrobElement(even2.diagram(A, B).circles, {0: 1})
        out = even2.even_multiply(B, A, B, upper, lower)
        assert out.terms == {0b01: 1, 0b10: 1}
        assert out.qdeg() == 2

    def test_even_multiply_checks_pieces(self, even2):
        with pytest.raises(GeneratorError):
            even2.even_multiply(A, A, B, FrobElement(("x",), {0: 1}),
                                FrobElement(even2.diagram(A, B).circles, {0: 1}))

    def test_commutative_diagonal(self):
        even = EvenArcAlgebra(3)
        for a in even.ids():
            for x, y in itertools.product(even.piece_basis(a, a), repeat=2):
                assert even.product_basis(x, y) == even.product_basis(y, x)
