"""The impact function xi_A(n) = min_{|B|=n} |A+B|, exact by enumeration
and by branch-and-bound, plus the inequality checkers built on it."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from .core import (
    BudgetExceededError,
    ResidueSet,
    shift_mask,
    sumset,
    sumset_mask,
)
from .progressions import alpha_profile

DEFAULT_NODE_BUDGET = 50_000_000
PLUENNECKE_EXACT_CAP = 16


@dataclass(frozen=True)
class ImpactResult:
    n: int
    value: int
    witness: ResidueSet
    nodes_explored: int
    exact: bool


def _trivial_impact(A: ResidueSet, n: int) -> Optional[ImpactResult]:
    q = A.q
    if A.mask == 0:
        raise ValueError("impact function needs a nonempty set")
    if not 0 <= n <= q:
        raise ValueError(f"n must lie in [0, {q}], got {n}")
    if n == 0:
        return ImpactResult(0, 0, ResidueSet.empty(q), 0, True)
    if n == 1:
        return ImpactResult(1, A.size, ResidueSet.from_elements(q, [0]), 0, True)
    return None


def xi_naive(A: ResidueSet, n: int, budget: int = DEFAULT_NODE_BUDGET) -> ImpactResult:
    """Exhaustive minimum of |A+B| over all B with |B| = n and 0 in B.

    Fixing 0 in B loses nothing: |A + (B+t)| = |A+B|.  The witness is the
    lexicographically least minimizer containing 0.
    """
    res = _trivial_impact(A, n)
    if res is not None:
        return res
    q = A.q
    if math.comb(q - 1, n - 1) > budget:
        raise BudgetExceededError(
            f"xi_naive budget exceeded: C({q - 1},{n - 1}) combinations"
        )
    shifts = [shift_mask(A.mask, t, q) for t in range(q)]
    base = A.mask
    best = q + 1
    best_comb: tuple[int, ...] = ()
    nodes = 0
    for comb in combinations(range(1, q), n - 1):
        m = base
        for t in comb:
            m |= shifts[t]
        nodes += 1
        v = m.bit_count()
        if v < best:
            best = v
            best_comb = comb
    witness = ResidueSet.from_elements(q, (0,) + best_comb)
    return ImpactResult(n, best, witness, nodes, True)


def xi_search(
    A: ResidueSet, n: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> ImpactResult:
    """Branch-and-bound equivalent of xi_naive.

    Candidates are chosen in increasing order with 0 forced into B;
    |A + B_partial| is monotone along a branch, so a branch whose partial
    sumset already reaches the incumbent is cut.  If the node budget runs
    out the best incumbent is returned with exact=False.
    """
    res = _trivial_impact(A, n)
    if res is not None:
        return res
    q = A.q
    shifts = [shift_mask(A.mask, t, q) for t in range(q)]
    best = q + 1
    best_elems: Optional[tuple[int, ...]] = None
    nodes = 0
    exact = True
    need = n - 1

    # iterative DFS: stack of (next_candidate, chosen, partial_mask)
    stack = [(1, (), A.mask)]
    while stack:
        start, chosen, partial = stack.pop()
        if nodes >= node_budget:
            exact = False
            break
        nodes += 1
        if len(chosen) == need:
            v = partial.bit_count()
            if v < best:
                best = v
                best_elems = chosen
            continue
        if partial.bit_count() >= best:
            continue
        remaining = need - len(chosen)
        # push in reverse so smaller candidates are explored first
        for c in range(q - remaining, start - 1, -1):
            stack.append((c + 1, chosen + (c,), partial | shifts[c]))

    if best_elems is None:
        # budget ran out before any leaf: fall back to the greedy witness
        exact = False
        chosen: list[int] = []
        partial = A.mask
        for _ in range(need):
            c = min(
                (c for c in range(1, q) if c not in chosen),
                key=lambda c: ((partial | shifts[c]).bit_count(), c),
            )
            chosen.append(c)
            partial |= shifts[c]
        best = partial.bit_count()
        best_elems = tuple(chosen)
    witness = ResidueSet.from_elements(q, (0,) + best_elems)
    return ImpactResult(n, best, witness, nodes, exact)


def xi2(A: ResidueSet) -> int:
    """xi_A(2) via the progression identity |A| + min_t alpha_t(A)."""
    return A.size + min(alpha_profile(A).values())


def xi3(A: ResidueSet) -> int:
    """xi_A(3) by exhaustive sweep over difference pairs (0 in B forced)."""
    q = A.q
    shifts = [shift_mask(A.mask, t, q) for t in range(q)]
    base = A.mask
    best = q + 1
    for d1 in range(1, q - 1):
        m1 = base | shifts[d1]
        if m1.bit_count() >= best:
            continue
        for d2 in range(d1 + 1, q):
            v = (m1 | shifts[d2]).bit_count()
            if v < best:
                best = v
    return best


# ---------------------------------------------------------------------------
# Sidon sets and the sumset inequalities


@dataclass(frozen=True)
class SidonReport:
    is_sidon: bool
    violating_shift: Optional[int]
    double_sum_size: int


def sidon_check(B: ResidueSet) -> SidonReport:
    """B is Sidon iff |B ∩ (B+t)| <= 1 for every t != 0, iff |2B| = n(n+1)/2."""
    if B.mask == 0:
        raise ValueError("sidon_check needs a nonempty set")
    q = B.q
    violating = None
    for t in range(1, q):
        if (B.mask & shift_mask(B.mask, t, q)).bit_count() >= 2:
            violating = t
            break
    double = sumset_mask(B.mask, B.mask, q).bit_count()
    return SidonReport(violating is None, violating, double)


@dataclass(frozen=True)
class SidonSumsetBoundReport:
    holds: bool
    sumset_size: int
    m: int
    n: int


def sidon_sumset_bound_check(A: ResidueSet, B: ResidueSet) -> SidonSumsetBoundReport:
    """For Sidon B: |A+B| >= m n^2 / (m+n-1) with m = |A|, n = |B|."""
    A._check_same(B)
    if not sidon_check(B).is_sidon:
        raise ValueError("sidon_sumset_bound_check requires a Sidon set B")
    m, n = A.size, B.size
    s = sumset(A, B).size
    holds = s * (m + n - 1) >= m * n * n
    return SidonSumsetBoundReport(holds, s, m, n)


@dataclass(frozen=True)
class PluenneckeReport:
    beta: Fraction
    best_subset: ResidueSet
    ratio: Fraction
    exact: bool

    @property
    def holds(self) -> bool:
        return self.ratio <= self.beta * self.beta


def pluennecke_subset(
    A: ResidueSet,
    B: ResidueSet,
    exact_cap: int = PLUENNECKE_EXACT_CAP,
    rng: Optional[random.Random] = None,
) -> PluenneckeReport:
    """The nonempty A' ⊆ A minimizing |A' + 2B| / |A'|, compared against
    beta^2 with beta = |A+B|/|A|.

    Exact over all subsets when |A| <= exact_cap, randomized descent
    (exact=False) beyond.
    """
    A._check_same(B)
    if A.mask == 0 or B.mask == 0:
        raise ValueError("pluennecke_subset needs nonempty sets")
    q = A.q
    beta = Fraction(sumset(A, B).size, A.size)
    bb = sumset_mask(B.mask, B.mask, q)
    elems = A.elements
    m = len(elems)
    shifts = [shift_mask(bb, a, q) for a in elems]

    if m <= exact_cap:
        best_ratio = None
        best_mask = 0
        # shared-prefix DFS over subsets of A
        stack = [(0, 0, 0, 0)]  # (index, chosen_mask, size, union)
        while stack:
            i, chosen, size, union = stack.pop()
            if size:
                r = Fraction(union.bit_count(), size)
                if best_ratio is None or r < best_ratio:
                    best_ratio = r
                    best_mask = chosen
            for j in range(m - 1, i - 1, -1):
                stack.append((j + 1, chosen | (1 << elems[j]), size + 1, union | shifts[j]))
        return PluenneckeReport(beta, ResidueSet(q, best_mask), best_ratio, True)

    rng = rng or random.Random(0)
    current = list(range(m))
    best_ratio = _subset_ratio(current, shifts)
    best = list(current)
    for _ in range(200 * m):
        cand = list(best)
        j = rng.randrange(m)
        if j in cand:
            if len(cand) > 1:
                cand.remove(j)
        else:
            cand.append(j)
        r = _subset_ratio(cand, shifts)
        if r < best_ratio:
            best_ratio = r
            best = cand
    mask = 0
    for j in best:
        mask |= 1 << elems[j]
    return PluenneckeReport(beta, ResidueSet(q, mask), best_ratio, False)


def _subset_ratio(idxs, shifts) -> Fraction:
    union = 0
    for j in idxs:
        union |= shifts[j]
    return Fraction(union.bit_count(), len(idxs))


# ---------------------------------------------------------------------------
# the two quadratic range bounds


@dataclass(frozen=True)
class RangeBounds:
    m: int
    k: int
    bound1: float
    bound2: float
    hypothesis_range_end: float


def range_bounds(m: int, k: int) -> RangeBounds:
    """Roots of the two quadratics bounding the minimizing n, and the
    asymptotic endpoint (3 + sqrt(16k+1))/2 that bound2 approaches."""
    if m <= 2:
        raise ValueError("range_bounds needs m >= 3 (a = m-2 degenerates)")
    if k < 0:
        raise ValueError("k must be nonnegative")
    b1 = _quadratic_root(m - 1, 2 * m + k - 2, (m - 1) * (m + k - 1))
    b2 = _quadratic_root(m - 2, 3 * m + 4 * k - 4, 2 * m + 2 * (k - 1) * (2 * m + k - 1))
    end = (3 + math.sqrt(16 * k + 1)) / 2
    return RangeBounds(m, k, b1, b2, end)


def _quadratic_root(a: int, b: int, c: int) -> float:
    return (b + math.sqrt(b * b + 4 * a * c)) / (2 * a)


_EPS = 1e-9


def bound2_threshold(k: int, m_cap: int = 100_000) -> int:
    """Smallest m for which bound2 has dropped to within one unit of the
    asymptotic endpoint (so the integer n it bounds cannot exceed the
    hypothesis range any more)."""
    end = (3 + math.sqrt(16 * k + 1)) / 2
    for m in range(3, m_cap):
        if range_bounds(m, k).bound2 <= end + 1 + _EPS:
            return m
    raise RuntimeError("bound2 threshold not found below cap")


_SQRT2 = math.sqrt(2)


def beta_threshold(k: int, m_cap: int = 100_000) -> int:
    """Smallest m from which bound1 forces beta = (m+n+r)/m below sqrt(2)
    for every m' >= m (n integer, r <= k-1).

    The condition is not monotone for tiny m: isolated small m can pass
    while a larger one fails, so the threshold is one past the last
    failure within the scan horizon (bound1 grows like sqrt(m), so the
    condition holds for all m beyond it)."""
    horizon = 4 * (k + 2) ** 2 + 100
    if horizon >= m_cap:
        raise ValueError("scan horizon exceeds cap")
    last_failure = None
    for m in range(3, horizon):
        n_max = math.floor(range_bounds(m, k).bound1 + _EPS)
        if not (m + n_max + k - 1) < _SQRT2 * m:
            last_failure = m
    if last_failure is None:
        return 3
    if last_failure >= horizon - 10:
        raise RuntimeError("beta condition still failing near the horizon")
    return last_failure + 1


def m_threshold(k: int) -> int:
    """m_0(k): the smaller m for which both quadratic arguments apply."""
    return max(beta_threshold(k), bound2_threshold(k))


# ---------------------------------------------------------------------------
# sampled verification of the main impact bound


@dataclass(frozen=True)
class TheoremMainReport:
    m: int
    q: int
    k: int
    samples: int
    hypothesis_holds: int
    vacuous: int
    checked: int
    skipped: list
    counterexamples: list

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def verify_impact_extension(
    m: int,
    q: int,
    k: int,
    samples: int,
    window: tuple[int, ...] = (2, 3, 4, 5),
    seed: int = 0,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> TheoremMainReport:
    """Sample digital sets and check: if xi(n) >= n+m+k holds on the short
    hypothesis range 2 <= n <= (3+sqrt(16k+1))/2, it also holds on the
    spot-check window inside [2, q-m-k-1]."""
    from .digital import prime_condition, sample_digital_set

    pc = prime_condition(m, q)
    if not pc.accepted:
        raise ValueError(f"(m={m}, q={q}) fails the prime condition")
    if m <= m_threshold(k):
        raise ValueError(
            f"m={m} not above threshold m_0({k}) = {m_threshold(k)}"
        )
    end = math.floor((3 + math.sqrt(16 * k + 1)) / 2 + _EPS)
    rng = random.Random(seed)
    hyp_holds = vacuous = checked = 0
    counterexamples = []
    skipped = []
    for _ in range(samples):
        A = sample_digital_set(m, q, rng)
        ok = True
        for n in range(2, end + 1):
            if _xi_small(A, n, node_budget) < n + m + k:
                ok = False
                break
        if not ok:
            vacuous += 1
            continue
        hyp_holds += 1
        for n in window:
            if not 2 <= n <= q - m - k - 1:
                continue
            try:
                val = _xi_small(A, n, node_budget)
            except BudgetExceededError:
                skipped.append({"set": list(A.elements), "n": n, "reason": "budget"})
                continue
            checked += 1
            if val < n + m + k:
                counterexamples.append({"set": list(A.elements), "n": n, "xi": val})
    return TheoremMainReport(
        m, q, k, samples, hyp_holds, vacuous, checked, skipped, counterexamples
    )


def _xi_small(A: ResidueSet, n: int, node_budget: int) -> int:
    if n == 2:
        return xi2(A)
    if n == 3:
        return xi3(A)
    res = xi_search(A, n, node_budget)
    if not res.exact:
        raise BudgetExceededError(f"xi_search inexact at n={n}")
    return res.value
