import itertools

import pytest

from src.algebra.odd_arc import OddArcAlgebra
from src.algebra.tables import parse_element
from src.analysis.center import (SpringerMap, center_choice_independence, even_center,
                                 exchange_parity, graded_center, h_component, h_map,
                                 in_characterization, odd_center, springer_comparison,
                                 supercenter_check, verify_iso)
from src.analysis.graded import GradedRank
from src.analysis.springer import epsilon, quotient_basis
from src.diagrams.chronology import enumerate_all_choices, reversed_choice
from src.diagrams.matchings import Matching, close, enumerate_matchings
from src.errors import SizeError

A2 = Matching(2, ((1, 2), (3, 4)))
B2 = Matching(2, ((1, 4), (2, 3)))


class TestOddCenter:
    @pytest.mark.parametrize("fixture, rank", [("odd1", 2), ("odd2", 6), ("odd3", 20)])
    def test_rank(self, fixture, rank, request):
        result = odd_center(request.getfixturevalue(fixture))
        assert result.rank == rank
        assert result.report

    def test_graded_rank_n2(self, odd2):
        assert odd_center(odd2).graded_rank == GradedRank({0: 1, 2: 3, 4: 2})

    def test_basis_is_central(self, odd2):
        for z in odd_center(odd2).basis:
            assert in_characterization(odd2, z)

    def test_supercommutes(self, odd2):
        center = odd_center(odd2)
        assert supercenter_check(odd2, center, graded_center(odd2, supercommute=False))

    def test_independent_of_choice(self):
        assert center_choice_independence(2, enumerate_all_choices(2))
        assert odd_center(OddArcAlgebra(2, reversed_choice(2))).rank == 6

    def test_size_guard(self):
        with pytest.raises(SizeError):
            odd_center(OddArcAlgebra(5))

    def test_export(self, odd2):
        record = odd_center(odd2).to_dict()
        assert record['rank'] == 6
        assert record['graded_rank'] == {'0': 1, '2': 3, '4': 2}
        assert record['check']['passed']


class TestEvenCenter:
    def test_graded_rank_n2(self):
        assert even_center(2).graded_rank == GradedRank({0: 1, 2: 3, 4: 2})

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_springer_quotient(self, n):
        assert springer_comparison(n)


class TestSpringerMap:
    def test_variable_images(self, odd2):
        images = h_map(2, odd2)
        assert images[1] == parse_element(odd2, "a1,b1")
        assert images[3] == parse_element(odd2, "a2,b2")
        assert images[4] == parse_element(odd2, "a2,b1")

    def test_images_are_central(self, odd2):
        for z in h_map(2, odd2).values():
            assert in_characterization(odd2, z)

    def test_kills_generators(self, odd2):
        h = SpringerMap(odd2)
        assert not h(epsilon(2, 1, (1, 2, 3, 4)))
        assert not h(epsilon(2, 2, (1, 2, 3)))

    @pytest.mark.parametrize("fixture", ["odd1", "odd2"])
    def test_iso(self, fixture, request):
        report = verify_iso(request.getfixturevalue(fixture))
        assert report, report.reasons

    def test_iso_spans_every_word_length(self, odd2):
        quotient = quotient_basis(2)
        assert max(quotient.degrees) > 2
        assert all(not quotient.degrees[k].representatives for k in quotient.degrees if k > 2)
        report = verify_iso(odd2)
        assert report, report.reasons
        assert len(report.reasons) == 4
        assert all(reason.startswith("[OK]") for reason in report.reasons)

    @pytest.mark.slow
    def test_iso_n3(self, odd3):
        assert verify_iso(odd3)


class TestFreePoints:
    def test_exchange_parity(self):
        assert exchange_parity(B2, {1, 2, 3}, {2}, (1, 4)) == 1
        assert exchange_parity(B2, {1, 2, 3}, {1}, (1, 4)) == 0
        assert exchange_parity(B2, {1, 2, 4}, {1}, (1, 4)) == 1

    def test_components(self):
        diagram = close(A2, A2)
        assert h_component(diagram, (1, 2, 3), (1,)).terms == {0b01: 1}
        assert h_component(diagram, (1, 2, 3), (2,)).terms == {0b01: -1}

    @pytest.mark.parametrize("n", [2, 3])
    def test_exchange_sign_rule(self, n):
        """Swapping j in R for its partner in S \\ R multiplies h_a by (-1)^(p+1)."""
        points = range(1, 2 * n + 1)
        for a in enumerate_matchings(n):
            diagram = close(a, a)
            partner = a.partner
            for size in range(n + 1, 2 * n + 1):
                for S in itertools.combinations(points, size):
                    for r in range(1, size + 1):
                        for R in itertools.combinations(S, r):
                            for j in R:
                                k = partner[j]
                                if k not in S or k in R:
                                    continue
                                swapped = tuple(sorted(set(R) - {j} | {k}))
                                p = exchange_parity(a, S, R, (j, k))
                                before = h_component(diagram, S, R)
                                after = h_component(diagram, S, swapped)
                                assert after == before.scale((-1) ** (p + 1))
