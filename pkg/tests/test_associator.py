import itertools

import pytest
from hypothesis import given, strategies as st

from src.algebra.exterior import popcount
from src.algebra.odd_arc import OddArcAlgebra
from src.algebra.tables import parse_element
from src.analysis.associator import (Associator, Cochain, GroupoidDegree, TwistedArcAlgebra,
                                     basis_triples, classify, classify_all_pairs,
                                     classify_twisted, d_eta, degree_of, eta_table,
                                     explicit_twist, integral_twist_search, non_iso_checks,
                                     quasi_associativity, solve_twist, triple_products,
                                     twisted_anticommutation, twisted_associativity,
                                     twisted_center, twisted_multiply, verify_cocycle,
                                     verify_twist)
from src.analysis.graded import GradedRank
from src.diagrams.chronology import canonical_choice, enumerate_all_choices, reversed_choice
from src.errors import CocycleError, SizeError

A, B = 0, 1


class TestDegrees:
    def test_compose(self):
        g = GroupoidDegree(A, B, 1).compose(GroupoidDegree(B, A, 3))
        assert g == GroupoidDegree(A, A, 4)
        with pytest.raises(CocycleError):
            GroupoidDegree(A, B, 1).compose(GroupoidDegree(A, A, 0))

    def test_degree_of(self, odd2):
        assert degree_of(odd2, parse_element(odd2, "c_ba").terms.popitem()[0]) == \
            GroupoidDegree(B, A, 3)


class TestPhiCh:
    def test_n2_values(self, assoc2):
        assert assoc2.phi_ch(A, B, A, B) == 1
        assert set(assoc2.ch_table.values()) <= {0, 1}

    def test_psi_is_twice_phi_on_realized_degrees(self, odd2, assoc2):
        for x, y, z in basis_triples(odd2):
            gx, gy, gz = (degree_of(odd2, v) for v in (x, y, z))
            expected = (assoc2.phi_ch(x.top, x.bottom, y.bottom, z.bottom)
                        + popcount(x.mask) * assoc2.splits(y.top, y.bottom, z.bottom)) % 2
            assert assoc2.psi(gx, gy, gz) == 2 * expected
            assert assoc2.phi(gx, gy, gz) == expected

    def test_phi_com_needs_composable_degrees(self, assoc2):
        with pytest.raises(CocycleError):
            assoc2.phi_com(GroupoidDegree(A, B, 1), GroupoidDegree(A, A, 0), GroupoidDegree(A, A, 0))

    @pytest.mark.parametrize("n", [2])
    def test_cocycle(self, n):
        assert verify_cocycle(Associator(n))

    @pytest.mark.slow
    def test_cocycle_n3(self):
        assert verify_cocycle(Associator(3))

    def test_cocycle_reversed_choice(self):
        assert verify_cocycle(Associator(2, reversed_choice(2)))

    def test_table_frame(self, assoc2):
        frame = assoc2.table_frame()
        assert len(frame) == 16
        assert set(frame.columns) == {'d', 'c', 'b', 'a', 'visible', 'phi_ch'}

    def test_cocycle_reports_completed_entries(self, assoc2):
        hidden = int((~assoc2.table_frame()['visible']).sum())
        assert assoc2.completed() == hidden
        report = verify_cocycle(assoc2)
        noted = [r for r in report.reasons if "not visible to the functor" in r]
        if hidden:
            assert noted == [f"{hidden} phi_ch entries not visible to the functor, completed"]
        else:
            assert not noted

    def test_eta_of_reversed_choice(self):
        eta = eta_table(canonical_choice(2), reversed_choice(2))
        assert {k for k, v in eta.items() if v} == {(A, B, A), (B, A, B)}
        for q in itertools.product((A, B), repeat=4):
            assert d_eta(eta, *q) in (0, 1)


class TestQuasiAssociativity:
    def test_n2_exhaustive(self, odd2, assoc2):
        assert quasi_associativity(odd2, assoc2)

    def test_n2_every_choice(self):
        for choice in enumerate_all_choices(2):
            algebra = OddArcAlgebra(2, choice)
            assert quasi_associativity(algebra, Associator(2, choice))

    def test_n3_sampled(self, odd3):
        assert quasi_associativity(odd3, Associator(3), samples=2000, seed=7)

    def test_witness_triple_sign(self, odd2):
        x, = parse_element(odd2, "b1").terms
        y, = parse_element(odd2, "1_ba").terms
        z, = parse_element(odd2, "1_ab").terms
        lhs, rhs = triple_products(odd2, x, y, z)
        assert lhs
        assert lhs == {k: -v for k, v in rhs.items()}


class TestTwist:
    def test_solve_n2(self, assoc2):
        tau = solve_twist(assoc2)
        assert verify_twist(assoc2, tau)

    @pytest.mark.slow
    def test_solve_n3(self):
        assoc = Associator(3)
        assert verify_twist(assoc, solve_twist(assoc))

    def test_explicit_twist(self, assoc2):
        tau = explicit_twist()
        assert verify_twist(assoc2, tau)
        assert tau(A, A, B, 2, 1) == 2
        assert tau(B, A, B, 0, 0) == 3
        assert tau(B, B, A, 1, 1) == 0

    def test_zero_twist_fails(self, assoc2):
        report = verify_twist(assoc2, Cochain(2, 2, 4))
        assert not report
        assert report.witness

    def test_wrong_n(self, assoc2):
        with pytest.raises(SizeError):
            verify_twist(assoc2, Cochain(3, 2, 4))

    @given(st.integers(-8, 8), st.integers(-8, 8))
    def test_cochain_quantum_parts_mod_4(self, k, l):
        tau = explicit_twist()
        assert tau(A, A, B, k, l) == tau(A, A, B, k % 4, l % 4) == k % 4

    def test_cochain_file(self, tmp_path):
        path = tmp_path / "tau.json"
        explicit_twist().save(str(path))
        assert Cochain.load(str(path)) == explicit_twist()
        with pytest.raises(CocycleError):
            Cochain.load(str(tmp_path / "missing.json"))


class TestTwistedAlgebra:
    def test_associative_n2(self, twisted2):
        assert twisted_associativity(twisted2)

    def test_associative_with_solved_twist(self, odd2, assoc2):
        algebra = TwistedArcAlgebra(odd2, solve_twist(assoc2))
        assert twisted_associativity(algebra)

    def test_associative_n3_sampled(self, odd3):
        tau = solve_twist(Associator(3))
        assert twisted_associativity(TwistedArcAlgebra(odd3, tau), samples=2000, seed=11)

    @pytest.mark.slow
    def test_associative_n3(self, odd3):
        tau = solve_twist(Associator(3))
        assert twisted_associativity(TwistedArcAlgebra(odd3, tau), samples=100000)

    def test_twisted_multiply(self, twisted2):
        x, y = parse_element(twisted2, "a2"), parse_element(twisted2, "1_ab")
        assert twisted_multiply(twisted2, x, y) == parse_element(twisted2, "-1*c_ab")

    def test_anticommutation(self, twisted2):
        assert twisted_anticommutation(twisted2)

    def test_changed_entries(self, twisted2):
        assert twisted2.multiply(parse_element(twisted2, "a1"), parse_element(twisted2, "1_ab")) \
            == parse_element(twisted2, "-1*c_ab")
        assert twisted2.multiply(parse_element(twisted2, "c_ba"), parse_element(twisted2, "1_ab")) \
            == parse_element(twisted2, "b1^b2")
        assert twisted2.multiply(parse_element(twisted2, "1_ba"), parse_element(twisted2, "1_ab")) \
            == parse_element(twisted2, "b2,-1*b1")

    def test_wrong_n(self, odd2):
        with pytest.raises(SizeError):
            TwistedArcAlgebra(odd2, Cochain(3, 2, 4))


class TestClassification:
    def test_reversed_choice(self):
        result = classify(canonical_choice(2), reversed_choice(2))
        assert result.report, result.report.reasons

    def test_every_choice_with_equal_associator(self):
        base = Associator(2)
        for choice in enumerate_all_choices(2):
            if Associator(2, choice).ch_table == base.ch_table:
                assert classify(canonical_choice(2), choice).report

    @pytest.mark.slow
    def test_every_pair_with_equal_associator(self):
        report = classify_all_pairs(2)
        assert report, report.reasons
        assert report.reasons == ["128 pairs, 2 distinct associators"]

    def test_twisted_every_choice(self):
        for choice in enumerate_all_choices(2):
            result = classify_twisted(canonical_choice(2), choice)
            assert result.report, result.report.reasons

    def test_twisted_against_explicit_twist(self):
        result = classify_twisted(canonical_choice(2), canonical_choice(2), tau=explicit_twist())
        assert result.report

    def test_export(self):
        record = classify(canonical_choice(2), reversed_choice(2)).to_dict()
        assert record['check']['passed']
        assert set(record['eta']) == {"0,1,0", "1,0,1"}


class TestNonIsomorphism:
    def test_checks(self):
        report = non_iso_checks()
        assert report, report.reasons

    def test_twisted_odd_center(self):
        center = twisted_center(explicit_twist(), supercommute=True)
        assert center.graded_rank == GradedRank({0: 1, 2: 2, 4: 2})

    def test_twisted_honest_center_degree_two(self):
        assert twisted_center(explicit_twist(), supercommute=False).graded_rank[2] == 0

    def test_sign_twist_search_reports(self, assoc2):
        search = integral_twist_search(assoc2)
        assert search.report
        assert search.report.reasons
        if search.found:
            assert search.values
