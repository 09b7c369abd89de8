"""Digital sets, carry statistics, and the two digit-set verifiers."""

import random

import pytest

from zqadd.core import ResidueSet, interval
from zqadd.digital import (
    canonical_interval_digits,
    carry_stats,
    centered_digits,
    count_digital_sets,
    enumerate_digital_sets,
    is_digital,
    prime_condition,
    sample_digital_set,
    verify_carry_extremality,
    verify_digital_impact_bound,
    verify_small_doubling_classification,
)


def S(q, elems):
    return ResidueSet.from_elements(q, elems)


class TestIsDigital:
    def test_positive(self):
        w = is_digital(S(8, [0, 3]))
        assert w is not None and w.m == 2

    def test_negative(self):
        assert is_digital(S(8, [0, 2])) is None

    def test_interval_digits(self):
        for m in (2, 3, 5):
            assert is_digital(canonical_interval_digits(m)) is not None

    def test_size_must_divide_modulus(self):
        assert is_digital(S(8, [0, 1, 2])) is None


class TestPrimeCondition:
    def test_accepted(self):
        assert prime_condition(6, 36).accepted
        assert prime_condition(4, 8).accepted

    def test_rejected_support(self):
        assert not prime_condition(2, 6).accepted

    def test_rejected_equal_exponent(self):
        assert not prime_condition(4, 12).accepted


class TestCarryStats:
    def test_m2_table(self):
        stats = carry_stats(is_digital(S(4, [0, 1])))
        assert stats.distinct_carries == (0, 1)
        assert stats.nonzero_pair_count == 1

    def test_interval_two_carries(self):
        for m in (2, 3, 4, 5, 6):
            stats = carry_stats(is_digital(canonical_interval_digits(m)))
            assert stats.distinct_carries == (0, 1)

    def test_centered_m5_count(self):
        stats = carry_stats(is_digital(centered_digits(5)))
        assert stats.nonzero_pair_count == 13

    def test_carries_bounded(self):
        rng = random.Random(31)
        for m in (3, 4, 5):
            for _ in range(50):
                A = sample_digital_set(m, m * m, rng)
                stats = carry_stats(is_digital(A))
                assert all(abs(c) < 2 * m for c in stats.distinct_carries)
                assert len(stats.distinct_carries) >= 2

    def test_wrong_modulus_rejected(self):
        with pytest.raises(ValueError):
            carry_stats(is_digital(S(8, [0, 3])))


class TestEnumeration:
    def test_counts(self):
        assert count_digital_sets(2, 4) == 4
        assert count_digital_sets(4, 8) == 16
        assert count_digital_sets(5, 25) == 3125

    def test_stream_matches_count(self):
        sets = list(enumerate_digital_sets(4, 8))
        assert len(sets) == 16
        assert len({w.set.mask for w in sets}) == 16

    def test_all_digital(self):
        for w in enumerate_digital_sets(3, 9):
            assert is_digital(w.set) is not None


class TestCarryExtremality:
    # minima frozen from the exhaustive sweeps
    MINIMA = {3: (2, 3), 4: (2, 6), 5: (2, 10)}

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_sweep(self, m):
        rep = verify_carry_extremality(m)
        assert rep.holds
        assert (rep.min_distinct_carries, rep.min_nonzero_pairs) == self.MINIMA[m]
        assert rep.interval_attains_distinct_min

    def test_minimizers_in_orbits(self):
        rep = verify_carry_extremality(4)
        assert rep.distinct_minimizers_in_interval_orbit
        assert rep.nonzero_minimizers_in_centered_orbit


class TestImpactBound:
    def test_desk_sample(self):
        rep = verify_digital_impact_bound(16, 32, samples=60, seed=41)
        assert not rep.counterexamples
        assert rep.two_ap_sets + rep.checked_sets == rep.samples

    def test_two_ap_branch(self):
        # a union of two difference-d APs has min alpha <= 2, so it lands
        # in the excluded branch with xi(2) <= m + 2
        rep = verify_digital_impact_bound(16, 32, samples=200, seed=42)
        assert rep.two_ap_sets >= 1

    def test_exploratory_below_guard(self):
        rep = verify_digital_impact_bound(6, 36, samples=30, seed=43, exploratory=True)
        assert not rep.assertive


class TestSmallDoubling:
    def test_interval_is_solution(self):
        m = 4
        rep = verify_small_doubling_classification(m, m * m)
        masks = {tuple(s["elements"]) for s in rep.solutions}
        assert tuple(range(m)) in masks
        assert rep.all_affine_interval_images

    def test_smoke_scale(self):
        rep = verify_small_doubling_classification(8, 16)
        assert rep.all_affine_interval_images
        assert rep.sets_scanned == 256

    def test_single_ap_of_difference_q2_plus_1(self):
        # 2*[0, m/2-1] united with (q/2+1) + 2*[0, m/2-1] is an AP of
        # difference q/2+1, hence an affine interval image
        m, q = 8, 16
        A = ResidueSet.from_elements(
            q, [2 * i for i in range(m // 2)] + [(q // 2 + 1 + 2 * i) % q for i in range(m // 2)]
        )
        assert is_digital(A) is not None
        rep = verify_small_doubling_classification(m, q)
        sols = {tuple(s["elements"]) for s in rep.solutions}
        assert tuple(sorted(A.elements)) in sols
