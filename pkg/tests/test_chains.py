"""Chain structure of equal-impact sets, the interval construction, mu(p)."""

import pytest

from zqadd.core import ResidueSet, interval, sumset
from zqadd.chains import (
    build_construction,
    compute_mu,
    construction_chain_family,
    equal_impact_witnesses,
    extract_chain_structure,
    mu_density_table,
    project_to_prime,
)
from zqadd.impact import xi2, xi3


def S(q, elems):
    return ResidueSet.from_elements(q, elems)


class TestEqualImpactWitnesses:
    def test_interval_has_none(self):
        assert equal_impact_witnesses(interval(0, 4, 17)) is None

    def test_witness_sumsets_agree(self):
        # on a hit, all three two-element sumsets share the xi(2) size
        found = 0
        for p in (5, 7, 11):
            for mask in range(1, (1 << p) - 1):
                A = ResidueSet(p, mask)
                if A.size < 2:
                    continue
                w = equal_impact_witnesses(A)
                if w is None:
                    continue
                found += 1
                d1, d2 = w
                target = xi2(A)
                assert xi3(A) == target
                for pair in ([0, d1], [0, d2], [d1, d2]):
                    assert sumset(A, S(p, pair)).size == target
        assert found > 0


class TestChainExtraction:
    def test_construction_chains_valid(self):
        spec = build_construction(3)
        p, A = project_to_prime(spec)
        fam = construction_chain_family(spec, p, A)
        assert fam.valid
        assert fam.run_count == 12
        assert len(fam.chains) == 4
        assert fam.z == 1 and fam.subgroup_order == p

    def test_run_sizes_grow_along_chain(self):
        spec = build_construction(3)
        p, A = project_to_prime(spec)
        fam = construction_chain_family(spec, p, A)
        for chain in fam.chains:
            sizes = [len(run) for run in chain]
            assert sizes == list(range(1, len(sizes) + 1))

    def test_size_bound(self):
        spec = build_construction(3)
        p, A = project_to_prime(spec)
        fam = construction_chain_family(spec, p, A)
        k = fam.run_count
        assert A.size >= fam.z * fam.subgroup_order - k * (k + 1) // 2

    def test_invalid_difference_rejected(self):
        with pytest.raises(ValueError):
            extract_chain_structure(S(12, [0, 1, 5]), 5, 3)


class TestConstruction:
    SIZES = {3: 36, 4: 163, 5: 694, 6: 2865, 7: 11644, 8: 46951}

    @pytest.mark.parametrize("m", sorted(SIZES))
    def test_frozen_sizes(self, m):
        spec = build_construction(m)
        assert spec.size == self.SIZES[m]
        assert spec.size == spec.closed_form_size
        assert spec.disjoint

    def test_m3_breakdown(self):
        # 28 from the long chain, then 6 + 1 + 1
        spec = build_construction(3)
        parts = [sum(hi - lo + 1 for lo, hi in ch) for ch in spec.chains]
        assert sorted(parts, reverse=True) == [28, 6, 1, 1]

    def test_trimmed_chain_size(self):
        # |phi(G_l)| = l(l-1)/2 for a chain of l intervals of width d
        spec = build_construction(4)
        d = spec.d
        long_chain = spec.chains[0]
        assert sum(hi - lo + 1 for lo, hi in long_chain) == d * (d - 1) // 2

    def test_density_approaches_13_18(self):
        densities = [build_construction(m).density for m in range(3, 9)]
        assert densities == sorted(densities)
        assert abs(densities[-1] - 13 / 18) < 0.02

    def test_projection(self):
        spec = build_construction(3)
        p, A = project_to_prime(spec)
        assert p == 67
        assert A.size == p - spec.size


class TestMu:
    VALUES = {5: 4, 7: 4, 11: 8, 13: 7}

    @pytest.mark.parametrize("p", sorted(VALUES))
    def test_frozen_values(self, p):
        rec = compute_mu(p, "full")
        assert rec.mu == self.VALUES[p]
        assert rec.bounds_hold

    def test_strategies_agree(self):
        for p in (5, 7, 11):
            assert compute_mu(p, "full").mu == compute_mu(p, "bounded").mu

    def test_mu7_sqrt_bound_tight(self):
        rec = compute_mu(7)
        assert rec.sqrt_bound == 4.0 and rec.mu == 4

    def test_witnesses_are_canonical(self):
        rec = compute_mu(5)
        for w in rec.witnesses_up_to_affine:
            assert w == tuple(sorted(w))
            assert w[0] == 0

    def test_composite_rejected(self):
        with pytest.raises(ValueError):
            compute_mu(9)

    def test_density_table(self):
        rows = mu_density_table([5, 7])
        assert rows[0]["mu"] == 4
        assert rows[-1]["ceiling"] == pytest.approx(5 / 18)
