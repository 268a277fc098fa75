import random
from fractions import Fraction

import pytest

from wallx.algebra.bwb import (
    bwb_terms,
    classify_hypothesis,
    expected_term_count,
    orthogonality_check,
)
from wallx.algebra.invariants import TypeS
from wallx.algebra.weights import Cocharacter, QuiverShape, Weight, is_dominant
from wallx.core.errors import DecompositionError, DimensionMismatchError


MU = Fraction(-9, 14)


def _w(*coords):
    return Weight.of(coords)


# --- bwb_terms ---

class TestBwbTerms:
    def test_loops_only(self):
        terms = bwb_terms(_w(0, 0), QuiverShape(2, a=0), Cocharacter.tau(1, 2))
        assert [(t.weight, t.shift, t.size, t.count) for t in terms] == [
            (_w(0, 0), 0, 0, 1),
            (_w(0, 0), 0, 1, 3),
            (_w(-1, 1), 1, 2, 3),
            (_w(-2, 2), 2, 3, 1),
        ]

    def test_counts_sum_to_power_of_two(self):
        shape = QuiverShape(2, a=1)
        lam = Cocharacter.tau(1, 2)
        terms = bwb_terms(_w(0, 0), shape, lam, include_vanished=True)
        assert len(terms) == expected_term_count(shape, lam) == 8
        assert sum(t.count for t in terms) == 2 ** 4

    def test_vanished_terms_dropped_by_default(self):
        shape = QuiverShape(2, a=1)
        lam = Cocharacter.tau(1, 2)
        kept = bwb_terms(_w(0, 0), shape, lam)
        assert len(kept) < 8
        assert all(not t.vanished and is_dominant(t.weight) for t in kept)
        assert all(t.shift <= t.size for t in kept)

    def test_max_terms(self):
        terms = bwb_terms(_w(0, 0), QuiverShape(2, a=0), Cocharacter.tau(1, 2), max_terms=2)
        assert len(terms) == 2

    def test_trivial_cocharacter(self):
        terms = bwb_terms(_w(0, 1), QuiverShape(2, a=1), Cocharacter.zero(2))
        assert len(terms) == 1
        assert terms[0].weight == _w(0, 1)

    def test_json(self):
        term = bwb_terms(_w(0, 0), QuiverShape(2, a=0), Cocharacter.tau(1, 2))[2]
        assert term.to_json() == {
            "weight": ["-1", "1"],
            "shift": 1,
            "vanished": False,
            "J": [[["-1", "1"], 2]],
            "multiplicity": 3,
        }

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            bwb_terms(_w(0), QuiverShape(2, a=0), Cocharacter.tau(1, 2))

    def test_straightening_keeps_total(self):
        rng = random.Random(29)
        for _ in range(40):
            d = rng.randint(1, 3)
            shape = QuiverShape(d, a=rng.randint(0, 2), framed=rng.random() < 0.5)
            lam = Cocharacter.tau(rng.randint(0, d), d)
            chi = Weight.of(sorted(rng.randint(-3, 3) for _ in range(d)))
            for term in bwb_terms(chi, shape, lam, max_terms=200):
                removed = sum((w.total() * m for w, m in term.J), Fraction(0))
                assert term.weight.total() == chi.total() - removed


# --- orthogonality ---

class TestHypothesis:
    def test_classify(self):
        assert classify_hypothesis(Fraction(0), Fraction(-1), 0, 1) == "i"
        assert classify_hypothesis(Fraction(-1), Fraction(-1), 0, 1) == "ii"
        assert classify_hypothesis(Fraction(-1), Fraction(-1), 1, 1) == "iii"
        assert classify_hypothesis(Fraction(-2), Fraction(-1), 0, 1) is None


class TestOrthogonality:
    def test_rank_one(self):
        verdict = orthogonality_check(None, None, _w(0), _w(1), 1, MU)
        assert verdict.status == "pass"
        assert verdict.hypothesis == "i"
        assert verdict.checked == 1

    def test_not_applicable(self):
        verdict = orthogonality_check(None, None, _w(1), _w(0), 1, MU)
        assert verdict.status == "not-applicable"
        assert verdict.ok

    def test_level_zero_is_a_vacuous_pass(self):
        for chi in (_w(1), _w(0, 1)):
            verdict = orthogonality_check(None, None, chi, chi, 1, MU)
            assert verdict.status == "pass"
            assert verdict.hypothesis == "iii"
            assert verdict.vacuous
            assert verdict.to_json()["vacuous"] is True
            assert verdict.checked == 0

    def test_rank_two(self):
        verdict = orthogonality_check(None, None, _w(-1, 0), _w(-1, 2), 1, MU)
        assert verdict.status == "pass"
        assert verdict.universe == 8
        assert not verdict.sampled

    def test_sampling_cap(self):
        verdict = orthogonality_check(None, None, _w(-1, 0), _w(-1, 2), 1, MU, sample_cap=4, seed=1)
        assert verdict.sampled
        assert verdict.checked + verdict.skipped_vanished == 4

    def test_stated_type_must_match(self):
        wrong = TypeS(((2, 0),), 0, 2, 1, MU)
        with pytest.raises(DecompositionError):
            orthogonality_check(wrong, None, _w(-1, 0), _w(-1, 2), 1, MU)
