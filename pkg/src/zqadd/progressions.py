"""Arithmetic-progression structure: decompositions, alpha profiles,
uniqueness of minimal decompositions, and stable components."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import (
    BudgetExceededError,
    ResidueSet,
    Subgroup,
    interval,
    proper_nontrivial_subgroups,
    seminorm,
    shift_mask,
    sumset,
    units,
)


@dataclass(frozen=True)
class ApDecomposition:
    """Partition of A into full cosets of <t> and maximal t-progressions.

    Progressions are (start, length) pairs; full cosets are recorded by
    their smallest element.
    """

    base: ResidueSet
    difference: int
    full_cosets: tuple[int, ...]
    progressions: tuple[tuple[int, int], ...]

    @property
    def alpha(self) -> int:
        return len(self.progressions)

    def reassemble(self) -> ResidueSet:
        q = self.base.q
        t = self.difference
        mask = 0
        order = q // math.gcd(t, q)
        for rep in self.full_cosets:
            x = rep
            for _ in range(order):
                mask |= 1 << x
                x = (x + t) % q
        for start, length in self.progressions:
            x = start
            for _ in range(length):
                mask |= 1 << x
                x = (x + t) % q
        return ResidueSet(q, mask)


def decompose(A: ResidueSet, t: int) -> ApDecomposition:
    """The unique decomposition of A into full <t>-cosets and maximal
    t-progressions."""
    q = A.q
    t %= q
    if t == 0:
        raise ValueError("difference must be nonzero")
    if A.mask == 0:
        raise ValueError("cannot decompose the empty set")
    g = math.gcd(t, q)
    order = q // g  # length of each coset cycle
    full_cosets = []
    progressions = []
    for rep in range(g):
        cycle = [(rep + j * t) % q for j in range(order)]
        in_a = [x in A for x in cycle]
        if all(in_a):
            full_cosets.append(min(cycle))
            continue
        for j in range(order):
            if in_a[j] and not in_a[j - 1]:
                length = 1
                while in_a[(j + length) % order]:
                    length += 1
                progressions.append((cycle[j], length))
    return ApDecomposition(A, t, tuple(sorted(full_cosets)), tuple(sorted(progressions)))


def alpha(A: ResidueSet, t: int) -> int:
    """alpha_t(A) = |(A+t) \\ A|, the progression count of the t-decomposition."""
    q = A.q
    t %= q
    if t == 0:
        raise ValueError("difference must be nonzero")
    return (shift_mask(A.mask, t, q) & ~A.mask).bit_count()


def alpha_profile(A: ResidueSet) -> dict[int, int]:
    """alpha_t(A) for every nonzero t."""
    if A.mask == 0:
        raise ValueError("alpha profile of the empty set is undefined")
    if A.mask == (1 << A.q) - 1:
        raise ValueError("alpha profile of the full group is undefined")
    return {t: alpha(A, t) for t in range(1, A.q)}


def min_alpha(A: ResidueSet) -> int:
    return min(alpha_profile(A).values())


def optimal_differences(A: ResidueSet) -> list[int]:
    """All t attaining min_t alpha_t(A), ascending."""
    prof = alpha_profile(A)
    k = min(prof.values())
    return [t for t, a in sorted(prof.items()) if a == k]


def find_multi_decompositions(A: ResidueSet) -> list[tuple[int, ApDecomposition]]:
    """Every difference achieving the minimal progression count, with its
    decomposition."""
    return [(t, decompose(A, t)) for t in optimal_differences(A)]


def coset_density_ok(A: ResidueSet) -> bool:
    """True iff |A ∩ (H+t)| < |H|/2 for every proper nontrivial subgroup H
    and every coset."""
    q = A.q
    for H in proper_nontrivial_subgroups(q):
        h_mask = H.mask
        for t in range(q // H.order):
            if 2 * (A.mask & shift_mask(h_mask, t, q)).bit_count() >= H.order:
                return False
    return True


def contained_in_coset(A: ResidueSet) -> Optional[Subgroup]:
    """A proper nontrivial subgroup H with A inside a single coset of H,
    if one exists."""
    q = A.q
    for H in sorted(proper_nontrivial_subgroups(q), key=lambda s: -s.order):
        h_mask = H.mask
        for t in range(q // H.order):
            if A.mask & ~shift_mask(h_mask, t, q) == 0:
                return H
    return None


# ---------------------------------------------------------------------------
# uniqueness of 2-progression decompositions


@dataclass(frozen=True)
class UniquenessVerdict:
    base: ResidueSet
    difference_set: tuple[int, ...]
    classification: str  # unique_pm_d | exception_interval_plus_point |
    #                      exception_point_plus_interval | other
    hypothesis_report: dict = field(compare=False, default_factory=dict)
    detail: dict = field(compare=False, default_factory=dict)


def _family_masks(q: int, size: int) -> tuple[int, int]:
    """Bitmasks of the two exceptional families at difference 1:
    [0, size-2] ∪ {size} and {0} ∪ [2, size]."""
    interval_plus_point = interval(0, size - 2, q).mask | (1 << (size % q))
    point_plus_interval = 1 | interval(2, size, q).mask
    return interval_plus_point, point_plus_interval


def check_uniqueness(A: ResidueSet) -> UniquenessVerdict:
    """Classify the set of x with |A + {0,x}| = |A| + 2 for a set with
    minimal progression count 2."""
    q = A.q
    m = A.size
    prof = alpha_profile(A)
    if min(prof.values()) != 2:
        raise ValueError("uniqueness check requires minimal progression count 2")
    if m <= 2:
        raise ValueError("uniqueness check refuses |A| <= 2 (needs 4 < |A|)")
    diff_set = tuple(t for t in sorted(prof) if prof[t] == 2)

    hypothesis = {
        "q_odd": q % 2 == 1,
        "q_gt_100": q > 100,
        "size_in_range": 4 < m < q - 4,
        "not_in_coset": contained_in_coset(A) is None,
    }

    if len(diff_set) == 2 and diff_set[1] == (q - diff_set[0]) % q:
        return UniquenessVerdict(A, diff_set, "unique_pm_d", hypothesis)

    fam1, fam2 = _family_masks(q, m)
    for c in units(q):
        image = A.dilated(pow(c, -1, q)).mask
        for s in range(q):
            rot = shift_mask(image, s, q)
            if rot == fam1:
                detail = {"scale": c, "shift": s}
                return UniquenessVerdict(
                    A, diff_set, "exception_interval_plus_point", hypothesis, detail
                )
            if rot == fam2:
                detail = {"scale": c, "shift": s}
                return UniquenessVerdict(
                    A, diff_set, "exception_point_plus_interval", hypothesis, detail
                )
    # structured dump for inspection
    detail = {
        "alpha_profile": prof,
        "elements": list(A.elements),
    }
    return UniquenessVerdict(A, diff_set, "other", hypothesis, detail)


# ---------------------------------------------------------------------------
# stable components


@dataclass(frozen=True)
class StabilityReport:
    base: ResidueSet
    k: int
    optimal_differences: tuple[int, ...]
    status: str  # stable | unstable | indeterminate
    witness: Optional[tuple[int, ResidueSet]] = None

    @property
    def stable(self) -> Optional[bool]:
        if self.status == "indeterminate":
            return None
        return self.status == "stable"


def stability(
    A: ResidueSet,
    strict: bool = False,
    budget: int = 2_000_000,
) -> StabilityReport:
    """Decide whether A has k stable components, k = min_t alpha_t(A).

    Enumerates every modification of A within the allowed distance and
    tests |(A~ + d) \\ A~| >= k for each optimal difference d.  By default
    the allowed modifications are all A~ with |A~ Δ A| <= k; with
    strict=True they are all A~ with at most k removals and at most k
    additions (the looser alternative reading).
    """
    q = A.q
    k = min_alpha(A)
    opt = tuple(optimal_differences(A))

    if strict:
        inside = A.elements
        outside = A.complement().elements
        count = _binom_sum(len(inside), k) * _binom_sum(len(outside), k)
    else:
        count = _binom_sum(q, k)
    if count > budget:
        return StabilityReport(A, k, opt, "indeterminate")

    for d in opt:
        for nbr in _neighborhood(A, k, strict):
            if (shift_mask(nbr, d, q) & ~nbr).bit_count() < k:
                return StabilityReport(A, k, opt, "unstable", (d, ResidueSet(q, nbr)))
    return StabilityReport(A, k, opt, "stable")


def _binom_sum(n: int, k: int) -> int:
    return sum(math.comb(n, j) for j in range(k + 1))


def _neighborhood(A: ResidueSet, k: int, strict: bool):
    """Masks of all allowed modifications of A (including A itself),
    in deterministic order."""
    q = A.q
    if not strict:
        for j in range(k + 1):
            for delta in combinations(range(q), j):
                m = A.mask
                for x in delta:
                    m ^= 1 << x
                yield m
    else:
        inside = A.elements
        outside = A.complement().elements
        for jr in range(min(k, len(inside)) + 1):
            for rem in combinations(inside, jr):
                base = A.mask
                for x in rem:
                    base ^= 1 << x
                for ja in range(min(k, len(outside)) + 1):
                    for add in combinations(outside, ja):
                        m = base
                        for x in add:
                            m |= 1 << x
                        yield m


# ---------------------------------------------------------------------------
# the coset-dense counterexample family


def multi_decomposition_family(k: int, q: int) -> ResidueSet:
    """The k-interval set [0, 2k-1] ∪ ⋃_i [iq/k + i, iq/k + 2k - 1 + i]
    that is also a union of k progressions of difference q/k + 1.

    Requires k | q.
    """
    if k < 1 or q % k != 0:
        raise ValueError("family needs k | q")
    mask = interval(0, 2 * k - 1, q).mask
    step = q // k
    for i in range(1, k):
        mask |= interval(i * step + i, i * step + 2 * k - 1 + i, q).mask
    return ResidueSet(q, mask)


def find_stable_multi_decomposition_instance(
    k: int, q_max: int
) -> Optional[tuple[int, ResidueSet]]:
    """Search q with k | q for an instance of the family above that has k
    stable components and a genuinely different optimal difference."""
    for q in range(k * (k + 3), q_max + 1, k):
        A = multi_decomposition_family(k, q)
        if min_alpha(A) != k:
            continue
        opt = optimal_differences(A)
        if not any(d not in (1, q - 1) for d in opt):
            continue
        if stability(A).status == "stable":
            return q, A
    return None
