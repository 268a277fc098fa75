import random
from fractions import Fraction

import pytest

from wallx.algebra.invariants import (
    MuParameter,
    enumerate_generators,
    enumerate_point_generators,
    enumerate_pt_generators,
    point_type_of_weight,
    type_of_weight,
)
from wallx.algebra.polytopes import build_Wa, contains
from wallx.algebra.sod import (
    enumerate_point_summands,
    enumerate_summands,
    pair_generator_count,
    point_summands_with_counts,
    slice_generator_count,
    summands_with_counts,
    window_contains,
    window_interval,
    window_report,
    window_width,
)
from wallx.algebra.weights import Weight
from wallx.core.errors import NonGenericMuError


MU = Fraction(-9, 14)


# --- summands ---

class TestSummands:
    def test_rank_one(self):
        summands = summands_with_counts(1, 1, MU)
        assert [(s.type.d_prime, s.type.parts, s.generators) for s in summands] == [
            (1, (), 1),
            (0, ((1, 0),), 1),
        ]

    def test_rank_two(self):
        summands = summands_with_counts(2, 1, MU)
        assert [(s.type.d_prime, s.type.parts, s.generators) for s in summands] == [
            (2, (), 3),
            (1, ((1, -1),), 1),
            (0, ((2, -1),), 1),
            (0, ((2, 0),), 2),
        ]

    def test_counts_add_up(self):
        for d in (1, 2, 3):
            total = sum(s.generators for s in summands_with_counts(d, 1, MU))
            assert total == len(enumerate_generators(d, 1, MU))

    def test_every_generator_type_is_listed(self):
        listed = set(enumerate_summands(2, 1, MU))
        for chi in enumerate_generators(2, 1, MU):
            assert type_of_weight(chi, 1, MU).type in listed

    def test_non_generic_needs_closed_ends(self):
        with pytest.raises(NonGenericMuError):
            enumerate_summands(1, 1, Fraction(-1, 2))
        assert enumerate_summands(1, 1, Fraction(-1, 2), closed_ends=True)

    def test_closed_ends_agree_when_generic(self):
        assert enumerate_summands(3, 1, MU) == enumerate_summands(3, 1, MU, closed_ends=True)

    def test_closed_ends_superset(self):
        mu = Fraction(-1, 3)
        open_ends = set(enumerate_summands(2, 1, mu))
        assert open_ends <= set(enumerate_summands(2, 1, mu, closed_ends=True))

    def test_pt_side_is_the_pair_label(self):
        summands = summands_with_counts(2, 1, MU, side="PT")
        assert [(s.type.d_prime, s.type.parts, s.generators) for s in summands] == [(2, (), 3)]
        assert summands[0] == summands_with_counts(2, 1, MU)[0]

    def test_pt_count_matches_generators(self):
        for d in (1, 2, 3):
            (summand,) = summands_with_counts(d, 1, MU, side="PT")
            assert summand.generators == len(enumerate_pt_generators(d, 1, MU))

    def test_pt_side_ignores_genericity(self):
        assert len(enumerate_summands(1, 1, Fraction(-1, 2), side="PT")) == 1

    def test_unknown_side(self):
        with pytest.raises(ValueError):
            enumerate_summands(1, 1, MU, side="XY")


# --- point category ---

class TestPointSummands:
    def test_rank_one(self):
        summands = point_summands_with_counts(1, MU)
        assert [(s.type.parts, s.generators) for s in summands] == [(((1, 0),), 1)]

    def test_rank_two(self):
        summands = point_summands_with_counts(2, MU)
        assert [(s.type.parts, s.generators) for s in summands] == [
            (((2, 0),), 2),
            (((2, 1),), 1),
        ]

    def test_non_generic_rank_one(self):
        # -1-mu and -mu are both integers: two labels
        summands = point_summands_with_counts(1, 0, closed_ends=True)
        assert [s.type.parts for s in summands] == [((1, -1),), ((1, 0),)]
        assert len(enumerate_point_generators(1, 0)) == 2
        with pytest.raises(NonGenericMuError):
            enumerate_point_summands(1, 0)

    def test_counts_add_up(self):
        for d in (1, 2, 3):
            total = sum(s.generators for s in point_summands_with_counts(d, MU))
            assert total == len(enumerate_point_generators(d, MU))

    def test_are_the_pair_free_labels(self):
        for d in (1, 2, 3):
            pair_free = {S for S in enumerate_summands(d, 0, MU) if S.d_prime == 0}
            assert set(enumerate_point_summands(d, MU)) == pair_free

    def test_every_generator_type_is_listed(self):
        listed = set(enumerate_point_summands(2, MU))
        for chi in enumerate_point_generators(2, MU):
            assert point_type_of_weight(chi, MU).type in listed


# --- counts ---

class TestCounts:
    def test_slice(self):
        assert slice_generator_count(2, -1) == 1
        assert slice_generator_count(2, 0) == 2
        assert slice_generator_count(1, 5) == 1

    def test_slice_periodic_under_det(self):
        for w in range(-3, 3):
            assert slice_generator_count(2, w) == slice_generator_count(2, w + 2)

    def test_pair(self):
        assert pair_generator_count(0, 1, MU) == 1
        assert pair_generator_count(1, 1, MU) == 1
        assert pair_generator_count(2, 1, MU) == 3

    def test_counts_invariant_under_integer_shift(self):
        rng = random.Random(31)
        for _ in range(12):
            d, a = rng.randint(1, 3), rng.randint(0, 2)
            mu = Fraction(rng.randint(-20, 0), rng.randint(5, 19))
            if not MuParameter(mu).is_generic(d):
                continue
            before = sorted(s.generators for s in summands_with_counts(d, a, mu))
            after = sorted(s.generators for s in summands_with_counts(d, a, mu + 1))
            assert before == after


# --- windows ---

class TestWindows:
    def test_width(self):
        assert window_width(1, 2, 1) == 4
        assert window_width(2, 2, 1) == 6

    def test_width_range(self):
        with pytest.raises(ValueError):
            window_width(0, 2, 1)

    def test_interval(self):
        assert window_interval(Weight.of([0, 2]), 1, 1, MU) == (Fraction(-13, 7), Fraction(1, 7))
        assert window_interval(Weight.of([0, 2]), 2, 1, MU) == (Fraction(-12, 7), Fraction(-12, 7))

    def test_generators_sit_in_windows(self):
        for chi in enumerate_generators(2, 1, MU):
            for e_i in (1, 2):
                assert window_contains(chi, e_i, 2, 1, MU)
                assert window_contains(chi, e_i, 2, 1, MU, half_open=False)

    def test_endpoint_at_non_generic_mu(self):
        mu = Fraction(-1, 3)
        chi = Weight.of([-2, -1, 1])
        assert window_interval(chi, 3, 0, mu) == (Fraction(3, 2), Fraction(3, 2))
        assert not window_contains(chi, 3, 3, 0, mu)
        assert window_contains(chi, 3, 3, 0, mu, half_open=False)

    def test_closed_window_holds_at_non_generic_mu(self):
        mu = Fraction(-1, 3)
        for a in (0, 2):
            for chi in enumerate_generators(3, a, mu):
                for e_i in (1, 2, 3):
                    assert window_contains(chi, e_i, 3, a, mu, half_open=False)

    def test_report(self):
        report = window_report(Weight.of([0, 2]), 1, 1, MU)
        assert report == {
            "side": "DT",
            "e_i": 1,
            "eta": 4,
            "range": ["-13/7", "1/7"],
            "half_open": True,
            "closed": True,
        }

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            window_contains(Weight.of([0]), 1, 2, 1, MU)


# --- PT windows ---

class TestPTWindows:
    def test_width(self):
        assert window_width(1, 2, 1, side="PT") == 3
        assert window_width(2, 2, 1, side="PT") == 2

    def test_interval(self):
        chi = Weight.of([0, 2])
        assert window_interval(chi, 1, 1, MU, side="PT") == (Fraction(-9, 14), Fraction(19, 14))
        assert window_interval(chi, 2, 1, MU, side="PT") == (Fraction(5, 7), Fraction(5, 7))

    def test_generators_sit_in_windows(self):
        for d in (1, 2, 3):
            for chi in enumerate_pt_generators(d, 1, MU):
                for e_i in range(1, d + 1):
                    assert window_contains(chi, e_i, d, 1, MU, side="PT")

    def test_open_at_the_bottom(self):
        mu = Fraction(-1, 2)
        assert not window_contains(Weight.of([0]), 1, 1, 1, mu, side="PT")
        assert window_contains(Weight.of([0]), 1, 1, 1, mu, half_open=False, side="PT")
        assert window_contains(Weight.of([1]), 1, 1, 1, mu, side="PT")

    def test_rank_one_window_is_the_pair_polytope(self):
        for a in (1, 2):
            for mu in (Fraction(-1, 2), Fraction(-9, 14), Fraction(1, 3), Fraction(0)):
                for c in range(-3, 4):
                    chi = Weight.of([c])
                    expected = contains(build_Wa(1, a), Weight.of([c + mu]))
                    assert window_contains(chi, 1, 1, a, mu, side="PT") == expected

    def test_report(self):
        report = window_report(Weight.of([0, 2]), 1, 1, MU, side="PT")
        assert report == {
            "side": "PT",
            "e_i": 1,
            "eta": 3,
            "range": ["-9/14", "19/14"],
            "half_open": True,
            "closed": True,
        }
