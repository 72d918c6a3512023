import pytest
from hypothesis import given, strategies as st

from src.diagrams.matchings import (Matching, StackedDiagram, catalan, close,
                                    enumerate_matchings, lookup, matching_id, stack)
from src.errors import DiagramError, SizeError


class TestEnumeration:
    @pytest.mark.parametrize("n, count", [(1, 1), (2, 2), (3, 5), (4, 14), (5, 42)])
    def test_catalan_count(self, n, count):
        assert len(enumerate_matchings(n)) == count == catalan(n)

    def test_n2_order(self):
        a, b = enumerate_matchings(2)
        assert a.arcs == ((1, 2), (3, 4))
        assert b.arcs == ((1, 4), (2, 3))

    def test_ids_match_positions(self):
        for k, m in enumerate(enumerate_matchings(4)):
            assert matching_id(m) == k

    @pytest.mark.parametrize("n", [0, 9])
    def test_size_guard(self, n):
        with pytest.raises(SizeError):
            enumerate_matchings(n)

    def test_lookup(self):
        assert lookup(2, "2:1") == enumerate_matchings(2)[1]
        assert lookup(3, "4") == enumerate_matchings(3)[4]
        with pytest.raises(DiagramError):
            lookup(2, "7")


class TestMatching:
    def test_crossing_rejected(self):
        with pytest.raises(DiagramError):
            Matching(2, ((1, 3), (2, 4)))

    def test_points_must_be_covered(self):
        with pytest.raises(DiagramError):
            Matching(2, ((1, 2), (3, 5)))

    def test_arcs_normalized(self):
        assert Matching(2, ((4, 3), (2, 1))).arcs == ((1, 2), (3, 4))

    def test_padded(self):
        m = Matching(2, ((1, 4), (2, 3))).padded(1)
        assert m.n == 3
        assert m.arcs == ((1, 4), (2, 3), (5, 6))

    def test_partner(self):
        m = Matching(2, ((1, 4), (2, 3)))
        assert m.partner == {1: 4, 4: 1, 2: 3, 3: 2}


class TestClosedDiagrams:
    def test_n2_circles(self):
        a, b = enumerate_matchings(2)
        assert close(a, a).circles == ((1, 2), (3, 4))
        assert close(b, b).circles == ((1, 4), (2, 3))
        assert close(b, a).circles == ((1, 2, 3, 4),)
        assert close(a, b).circle_of[3] == 0

    @given(st.integers(min_value=1, max_value=4), st.data())
    def test_diagonal_has_n_circles(self, n, data):
        ms = enumerate_matchings(n)
        a = data.draw(st.sampled_from(ms))
        assert len(close(a, a)) == n

    @given(st.integers(min_value=1, max_value=4), st.data())
    def test_circle_count_symmetric(self, n, data):
        ms = enumerate_matchings(n)
        a, b = data.draw(st.sampled_from(ms)), data.draw(st.sampled_from(ms))
        assert len(close(a, b)) == len(close(b, a))
        assert 1 <= len(close(a, b)) <= n

    def test_mismatched_n(self):
        with pytest.raises(DiagramError):
            close(enumerate_matchings(1)[0], enumerate_matchings(2)[0])

    def test_stack_generators_layer_major(self):
        a, b = enumerate_matchings(2)
        s = stack(close(a, a), close(a, b))
        assert s.offsets() == [0, 2]
        assert s.generators() == ((0, (1, 2)), (0, (3, 4)), (1, (1, 2, 3, 4)))
        assert len(s) == 3

    def test_stack_rejects_mixed_n(self):
        (m,) = enumerate_matchings(1)
        a, b = enumerate_matchings(2)
        with pytest.raises(DiagramError):
            StackedDiagram((close(m, m), close(a, b)))
