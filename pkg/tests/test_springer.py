import pytest
from hypothesis import given, strategies as st

from src.algebra.exterior import ExtElement
from src.analysis.graded import GradedRank
from src.analysis.springer import (admissible_generators, epsilon, normal_form,
                                   quotient_basis, skew_monomial, skew_ring)
from src.errors import SizeError


def polynomials(n):
    size = 1 << (2 * n)
    return st.dictionaries(st.integers(0, size - 1), st.integers(-3, 3), max_size=8).map(
        lambda terms: ExtElement(skew_ring(n), terms, 2 * n))


class TestEpsilon:
    def test_signed_by_position(self):
        e = epsilon(2, 1, (1, 2, 3, 4))
        assert e == (skew_monomial(2, [1]) - skew_monomial(2, [2])
                     + skew_monomial(2, [3]) - skew_monomial(2, [4]))
        assert epsilon(2, 3, (1, 2, 4)) == skew_monomial(2, [1, 2, 4], -1)

    def test_top_degree(self):
        # positions 0 and 1 of S = {1, 2}: one odd position
        assert epsilon(1, 2, (1, 2)) == skew_monomial(1, [1, 2], -1)

    def test_ranges(self):
        with pytest.raises(ValueError):
            epsilon(2, 1, (1, 2))          # |S| too small
        with pytest.raises(ValueError):
            epsilon(2, 1, (1, 2, 4))       # r below n - k + 1
        with pytest.raises(ValueError):
            epsilon(2, 2, (1, 1, 3))
        with pytest.raises(ValueError):
            epsilon(2, 2, (1, 2, 5))

    def test_admissible_count_n1(self):
        assert admissible_generators(1) == [(1, (1, 2)), (2, (1, 2))]


class TestQuotient:
    @pytest.mark.parametrize("n, rank", [(1, 2), (2, 6), (3, 20)])
    def test_rank_is_central_binomial(self, n, rank):
        assert quotient_basis(n).rank == rank

    def test_graded_rank_n1(self):
        assert quotient_basis(1).graded_rank() == GradedRank({0: 1, 2: 1})

    def test_graded_rank_n2(self):
        graded = quotient_basis(2).graded_rank()
        assert graded == GradedRank({0: 1, 2: 3, 4: 2})
        assert str(graded) == "1+3q^2+2q^4"

    @pytest.mark.slow
    def test_rank_n4(self):
        assert quotient_basis(4).rank == 70

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_generators_reduce_to_zero(self, n):
        basis = quotient_basis(n)
        for r, S in admissible_generators(n):
            assert not normal_form(epsilon(n, r, S), basis)

    def test_linear_normal_form(self):
        assert normal_form(skew_monomial(2, [4]), quotient_basis(2)) == \
            skew_monomial(2, [1]) - skew_monomial(2, [2]) + skew_monomial(2, [3])

    @given(polynomials(2))
    def test_normal_form_idempotent(self, p):
        basis = quotient_basis(2)
        once = normal_form(p, basis)
        assert normal_form(once, basis) == once

    @given(polynomials(2), polynomials(2))
    def test_normal_form_linear(self, p, q):
        basis = quotient_basis(2)
        assert normal_form(p + q, basis) == normal_form(p, basis) + normal_form(q, basis)

    @given(polynomials(2), st.sampled_from(admissible_generators(2)))
    def test_left_ideal_is_killed(self, p, generator):
        r, S = generator
        basis = quotient_basis(2)
        assert not normal_form(p.wedge(epsilon(2, r, S)), basis)

    def test_wrong_ring(self):
        with pytest.raises(SizeError):
            normal_form(skew_monomial(1, [1]), quotient_basis(2))

    def test_size_guard(self):
        with pytest.raises(SizeError):
            quotient_basis(5)

    def test_export(self):
        record = quotient_basis(2).to_dict(relations=True)
        assert record['rank'] == 6
        assert record['graded_rank'] == {'0': 1, '2': 3, '4': 2}
        assert set(record['relations']) == {'0', '1', '2', '3', '4'}
