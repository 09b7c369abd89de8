"""Core carrier type, sumsets, Kneser machinery, difference normalization."""

import random

import pytest

from zqadd.core import (
    ModulusMismatchError,
    ResidueSet,
    Subgroup,
    crt_embed,
    format_set,
    interval,
    kneser_check,
    next_prime,
    normalize_difference,
    parse_set,
    period_group,
    proper_nontrivial_subgroups,
    seminorm,
    set_from_json,
    set_to_json,
    shift_mask,
    subgroup_lemma_check,
    sumset,
    units,
)
from zqadd.digital import enumerate_digital_sets


def S(q, elems):
    return ResidueSet.from_elements(q, elems)


class TestResidueSet:
    def test_elements_roundtrip(self):
        A = S(10, [3, 7, 9])
        assert A.elements == (3, 7, 9)
        assert A.size == 3

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            S(5, [5])

    def test_shift_wraps(self):
        assert S(5, [3, 4]).shifted(2).elements == (0, 1)

    def test_dilation_by_unit_preserves_size(self):
        A = S(12, [0, 1, 5])
        assert A.dilated(5).size == 3

    def test_modulus_mismatch(self):
        with pytest.raises(ModulusMismatchError):
            sumset(S(5, [0]), S(6, [0]))


class TestSetLiterals:
    def test_parse_format_roundtrip(self):
        A = parse_set("q=12;{0,3,11}")
        assert A.q == 12 and A.elements == (0, 3, 11)
        assert parse_set(format_set(A)) == A

    def test_json_roundtrip(self):
        A = S(9, [1, 4])
        assert set_from_json(set_to_json(A)) == A

    def test_malformed_literal(self):
        with pytest.raises(ValueError):
            parse_set("q=;{1}")


class TestSumset:
    def test_direct_expansion(self):
        assert sumset(S(5, [0, 1]), S(5, [0, 2])).elements == (0, 1, 2, 3)

    def test_identity_element(self):
        A = S(11, [2, 5, 6])
        assert sumset(A, S(11, [0])) == A

    def test_ap_case(self):
        # intervals add like intervals: size |A| + |B| - 1
        assert sumset(interval(0, 4, 12), S(12, [0, 1])) == interval(0, 5, 12)


class TestInterval:
    def test_wraparound(self):
        assert interval(10, 2, 12).elements == (0, 1, 2, 10, 11)

    def test_full_group(self):
        assert interval(0, 6, 7).size == 7

    def test_singleton(self):
        assert interval(3, 3, 7).elements == (3,)


class TestSeminorm:
    def test_zero(self):
        assert seminorm(0, 12) == 0

    def test_minus_one(self):
        assert seminorm(11, 12) == 1

    def test_symmetry(self):
        assert seminorm(5, 12) == seminorm(7, 12) == 5


class TestPeriodGroup:
    def test_full_group(self):
        assert period_group(ResidueSet.full(6)).order == 6

    def test_coset(self):
        assert period_group(S(12, [0, 3, 6, 9])).order == 4

    def test_aperiodic(self):
        assert period_group(S(5, [0, 1])).order == 1


class TestKneser:
    def test_small_pair(self):
        rep = kneser_check(S(7, [0, 1]), S(7, [0, 1]))
        assert rep.holds and rep.lhs == 3 and rep.rhs == 3 and rep.H.order == 1

    def test_singletons(self):
        assert kneser_check(S(5, [0]), S(5, [0])).holds

    def test_random_pairs(self):
        rng = random.Random(1)
        for _ in range(500):
            q = rng.randrange(2, 61)
            A = ResidueSet(q, rng.randrange(1, 1 << q))
            B = ResidueSet(q, rng.randrange(1, 1 << q))
            assert kneser_check(A, B).holds


class TestNormalizeDifference:
    def test_spec_example_q4(self):
        nd = normalize_difference(6, 4)
        assert nd.value == 10
        assert nd.divisor_part == 2 and nd.coprime_part == 5

    def test_spec_example_q12(self):
        nd = normalize_difference(3, 12)
        assert nd.value == 39
        assert nd.divisor_part == 3 and nd.coprime_part == 13

    def test_coprime_case(self):
        nd = normalize_difference(5, 12)
        assert nd.divisor_part == 1 and nd.value % 12 == 5

    def test_postconditions_random(self):
        import math

        rng = random.Random(3)
        for _ in range(300):
            q = rng.randrange(2, 200)
            a = rng.randrange(0, q)
            nd = normalize_difference(a, q)
            assert nd.value % q == a % q or (a % q == 0 and nd.value == q)
            assert nd.value == nd.divisor_part * nd.coprime_part
            assert q % nd.divisor_part == 0
            assert math.gcd(nd.coprime_part, q) == 1


class TestSubgroupLemma:
    def test_coset_intersection_example(self):
        rep = subgroup_lemma_check(S(8, [0, 3]), Subgroup(8, 2))
        assert rep.coset_bound_holds

    def test_exhaustive_m4_q8(self):
        for w in enumerate_digital_sets(4, 8):
            for H in proper_nontrivial_subgroups(8):
                assert subgroup_lemma_check(w.set, H).holds

    def test_full_subgroup_rejected(self):
        with pytest.raises(ValueError):
            subgroup_lemma_check(S(8, [0, 3]), Subgroup(8, 8))


class TestNumberTheory:
    def test_next_prime(self):
        assert next_prime(64) == 67

    def test_units(self):
        assert tuple(units(8)) == (1, 3, 5, 7)

    def test_crt_embed(self):
        A = S(4, [1, 3])
        E = crt_embed(A, 3)
        assert E.q == 12
        assert all(x % 4 in (1, 3) and x % 3 == 0 for x in E.elements)
