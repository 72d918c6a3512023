import itertools
import json

import pytest

from src.algebra.tqft import split_count
from src.diagrams.chronology import (Chronology, canonical_chronology, canonical_choice,
                                     enumerate_all_choices, enumerate_choices, load_choice,
                                     reversed_choice, validate)
from src.diagrams.cobordism import ContractionStep, Orientation
from src.diagrams.matchings import Matching, close, enumerate_matchings
from src.errors import DiagramError, SizeError

NESTED = Matching(3, ((1, 6), (2, 3), (4, 5)))


def _circles(c, b):
    return len(close(c, b))


class TestValidation:
    def test_canonical_is_valid(self):
        ms = enumerate_matchings(3)
        for triple in itertools.product(ms, repeat=3):
            assert validate(canonical_chronology(triple))

    def test_side_by_side_before_surrounding_arc(self):
        steps = tuple(ContractionStep(arc) for arc in ((2, 3), (4, 5), (1, 6)))
        report = validate(Chronology((NESTED, NESTED, NESTED), steps))
        assert not report
        assert report.witness['alpha'] == [1, 6]

    def test_surrounding_arc_first(self):
        steps = tuple(ContractionStep(arc) for arc in ((2, 3), (1, 6), (4, 5)))
        assert validate(Chronology((NESTED, NESTED, NESTED), steps))

    def test_steps_must_permute_arcs(self):
        steps = (ContractionStep((2, 3)), ContractionStep((1, 6)))
        with pytest.raises(DiagramError):
            validate(Chronology((NESTED, NESTED, NESTED), steps))


class TestPlans:
    @pytest.mark.parametrize("n", [2, 3])
    def test_split_count_formula(self, n):
        ms = enumerate_matchings(n)
        for c, b, a in itertools.product(ms, repeat=3):
            expected = n + _circles(c, a) - _circles(c, b) - _circles(b, a)
            assert expected % 2 == 0
            assert split_count((c, b, a)) == expected // 2

    def test_split_count_independent_of_chronology(self):
        ms = enumerate_matchings(3)
        for triple in itertools.product(ms, repeat=3):
            counts = {ch.plan().split_count for ch in enumerate_choices(3, triple)}
            assert counts == {split_count(triple)}

    def test_n2_split_triples(self):
        a, b = enumerate_matchings(2)
        assert split_count((b, a, b)) == 1
        assert split_count((a, b, a)) == 1
        assert split_count((a, a, b)) == 0


class TestChoices:
    def test_enumerate_n2(self):
        choices = list(enumerate_all_choices(2))
        assert len(choices) == 16
        assert len(set(choices)) == 16
        assert canonical_choice(2) in choices
        assert reversed_choice(2) in choices

    def test_enumeration_guard(self):
        with pytest.raises(SizeError):
            list(enumerate_all_choices(3))

    def test_reversed_flips_split_orientations_only(self):
        rev = reversed_choice(2)
        a, b = enumerate_matchings(2)
        steps = rev.chronology(b, a, b).steps
        assert [s.orientation for s in steps].count(Orientation.RIGHT_TO_LEFT) == 1
        assert rev.chronology(a, a, b) == canonical_choice(2).chronology(a, a, b)
        assert not rev.is_canonical()

    def test_load_choice_names(self):
        assert load_choice(2, None) == canonical_choice(2)
        assert load_choice(2, "canonical").is_canonical()
        assert load_choice(2, "reversed") == reversed_choice(2)

    def test_load_choice_from_file(self, tmp_path):
        path = tmp_path / "choice.json"
        path.write_text(json.dumps(reversed_choice(2).to_dict()))
        assert load_choice(2, str(path)) == reversed_choice(2)

    def test_load_choice_rejects_bad_files(self, tmp_path):
        with pytest.raises(DiagramError):
            load_choice(2, str(tmp_path / "missing.json"))
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps([{'triple': [0, 1, 5], 'steps': []}]))
        with pytest.raises(DiagramError):
            load_choice(2, str(bad))

    def test_load_choice_rejects_nesting_violation(self, tmp_path):
        ms = enumerate_matchings(3)
        b = ms.index(NESTED)
        record = {'triple': [b, b, b],
                  'steps': [{'arc': [2, 3]}, {'arc': [4, 5]}, {'arc': [1, 6]}]}
        path = tmp_path / "nested.json"
        path.write_text(json.dumps([record]))
        with pytest.raises(DiagramError):
            load_choice(3, str(path))
