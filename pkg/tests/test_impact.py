"""Impact function oracles, Sidon/Pluennecke machinery, range bounds."""

import random
from fractions import Fraction

import pytest

from zqadd.core import ResidueSet, interval, period_group
from zqadd.impact import (
    beta_threshold,
    bound2_threshold,
    m_threshold,
    pluennecke_subset,
    range_bounds,
    sidon_check,
    sidon_sumset_bound_check,
    verify_impact_extension,
    xi2,
    xi3,
    xi_naive,
    xi_search,
)
from zqadd.progressions import min_alpha


def S(q, elems):
    return ResidueSet.from_elements(q, elems)


class TestImpactValues:
    def test_xi1_is_size(self):
        A = S(17, [0, 2, 9])
        r = xi_search(A, 1)
        assert r.value == 3 and r.witness.elements == (0,)

    def test_xi_example(self):
        assert xi_naive(S(7, [0, 1, 3]), 2).value == 5
        assert xi_search(S(7, [0, 1, 3]), 2).value == 5

    def test_pigeonhole_aperiodic(self):
        A = S(9, [0, 1, 5])
        assert xi_naive(A, 9 - 3).value == 8

    def test_pigeonhole_periodic(self):
        # a periodic set misses a whole coset of its period group
        A = S(6, [0, 2, 3, 5])
        assert xi_naive(A, 2).value == 6 - period_group(A).order

    def test_full_beyond_complement(self):
        A = S(8, [0, 1, 2])
        for n in range(6, 9):
            assert xi_search(A, n).value == 8

    def test_interval_growth(self):
        A = interval(0, 3, 13)
        for n in range(1, 10):
            assert xi_naive(A, n).value == 4 + n - 1

    def test_oracle_agreement_random(self):
        rng = random.Random(11)
        for _ in range(200):
            q = rng.randrange(3, 13)
            A = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            n = rng.randrange(0, q - A.size + 1)
            rn, rs = xi_naive(A, n), xi_search(A, n)
            assert rn.value == rs.value
            assert rn.witness == rs.witness

    def test_xi2_xi3_shortcuts(self):
        rng = random.Random(13)
        for _ in range(100):
            q = rng.randrange(5, 14)
            A = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            if A.size <= q - 3:
                assert xi2(A) == xi_naive(A, 2).value
                assert xi3(A) == xi_naive(A, 3).value

    def test_xi2_identity(self):
        A = S(12, [0, 1, 2, 7, 8])
        assert xi2(A) == A.size + min_alpha(A)

    def test_budget_gives_inexact(self):
        A = S(18, list(range(9)))
        r = xi_search(A, 5, node_budget=3)
        assert not r.exact
        assert r.value >= xi_search(A, 5).value


class TestSidon:
    def test_sidon_example(self):
        rep = sidon_check(S(8, [0, 1, 3]))
        assert rep.is_sidon and rep.double_sum_size == 6

    def test_not_sidon(self):
        rep = sidon_check(S(9, [0, 1, 2]))
        assert not rep.is_sidon and rep.violating_shift == 1

    def test_singleton(self):
        assert sidon_check(S(5, [2])).is_sidon

    def test_sumset_bound_example(self):
        rng = random.Random(17)
        A = ResidueSet.from_elements(50, rng.sample(range(50), 10))
        B = S(50, [0, 1, 3, 7])
        assert sidon_check(B).is_sidon
        rep = sidon_sumset_bound_check(A, B)
        assert rep.holds and rep.sumset_size >= 13  # ceil(160/13)

    def test_sumset_bound_randomized(self):
        rng = random.Random(19)
        done = 0
        while done < 200:
            q = rng.randrange(5, 41)
            B = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            if not sidon_check(B).is_sidon:
                continue
            A = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            assert sidon_sumset_bound_check(A, B).holds
            done += 1


class TestPluennecke:
    def test_singleton_b(self):
        A = S(8, [0, 1])
        rep = pluennecke_subset(A, S(8, [0]))
        assert rep.holds and rep.ratio == 1

    def test_small_example(self):
        A = B = S(8, [0, 1])
        rep = pluennecke_subset(A, B)
        assert rep.beta == Fraction(3, 2)
        assert rep.exact and rep.holds
        assert rep.ratio <= Fraction(9, 4)

    def test_randomized(self):
        rng = random.Random(23)
        for _ in range(100):
            q = rng.randrange(4, 41)
            A = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            B = ResidueSet(q, rng.randrange(1, (1 << q) - 1))
            if A.size > 12:
                continue
            rep = pluennecke_subset(A, B)
            assert rep.exact
            assert rep.holds


class TestRangeBounds:
    def test_paper_thresholds(self):
        assert beta_threshold(0) == 5
        assert bound2_threshold(0) == 4
        assert beta_threshold(1) == 10
        assert bound2_threshold(1) == 9
        assert m_threshold(0) == 5 and m_threshold(1) == 10

    def test_k0_endpoint(self):
        assert range_bounds(10, 0).hypothesis_range_end == 2.0

    def test_bounds_decrease_toward_endpoint(self):
        ends = [range_bounds(m, 1).bound2 for m in (9, 20, 100, 1000)]
        assert ends == sorted(ends, reverse=True)
        assert ends[-1] == pytest.approx((3 + 17**0.5) / 2, abs=0.05)

    def test_small_m_rejected(self):
        with pytest.raises(ValueError):
            range_bounds(2, 0)


class TestImpactExtension:
    def test_k0_smoke(self):
        rep = verify_impact_extension(m=6, q=36, k=0, samples=50, window=(2, 3), seed=5)
        assert not rep.counterexamples
        assert rep.hypothesis_holds + rep.vacuous == rep.samples

    def test_k1_smoke(self):
        rep = verify_impact_extension(m=16, q=32, k=1, samples=50, window=(2, 3), seed=6)
        assert not rep.counterexamples

    def test_below_threshold_rejected(self):
        with pytest.raises(ValueError):
            verify_impact_extension(m=3, q=36, k=0, samples=5, window=(2,), seed=0)
