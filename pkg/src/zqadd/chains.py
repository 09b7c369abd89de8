"""Sets with xi(2) = xi(3): chain decompositions of the complement, the
explicit chain-of-intervals construction with complement density 5/18,
and the minimal-cardinality function mu(p) over prime moduli."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .core import (
    BudgetExceededError,
    ResidueSet,
    Subgroup,
    next_prime,
    seminorm,
    shift_mask,
)
from .impact import xi2, xi3
from .progressions import alpha_profile, contained_in_coset, optimal_differences


def equal_impact_witnesses(A: ResidueSet) -> Optional[tuple[int, int]]:
    """If xi_A(2) = xi_A(3), a pair of distinct nonzero differences
    (d1, d2) with |A + {0, d1, d2}| = xi_A(2), else None.

    Both differences must individually be optimal for xi(2), so the sweep
    runs over pairs of optimal differences, ordered by seminorm.
    """
    q = A.q
    if A.mask == 0 or A.mask == (1 << q) - 1:
        raise ValueError("needs a nonempty proper subset")
    target = xi2(A)
    opt = sorted(optimal_differences(A), key=lambda d: (seminorm(d, q), d))
    base = A.mask
    shifts = {d: shift_mask(base, d, q) for d in opt}
    for d1, d2 in combinations(opt, 2):
        if (base | shifts[d1] | shifts[d2]).bit_count() == target:
            return (d1, d2)
    return None


@dataclass(frozen=True)
class ChainFamily:
    """Decomposition of A^c within the occupied cosets of H = <d1> into
    chains of d1-gap-runs linked by translation by d2."""

    q: int
    d1: int
    d2: int
    z: int  # cosets of H meeting A
    subgroup_order: int
    chains: tuple[tuple[tuple[int, ...], ...], ...]  # chain -> run -> elements
    full_cosets: tuple[int, ...]  # representatives of cosets disjoint from A
    run_count: int  # k: total number of gap runs
    violations: tuple[str, ...] = field(default=())

    @property
    def valid(self) -> bool:
        return not self.violations


def extract_chain_structure(
    A: ResidueSet, d1: int, d2: int, k_bound: Optional[int] = None
) -> ChainFamily:
    """Decompose the complement of A into maximal d1-runs inside the
    cosets of <d1> meeting A, link them into chains via G -> (G - d2),
    and check the chain-structure conditions:

      (i)   every run has size <= k (k = xi(3) - |A| when k_bound is None),
      (ii)  sizes along a chain grow by exactly one,
      (iii) each chain head g satisfies g - d2 in A,
      (iv)  (G + {0, d1}) for distinct runs G are pairwise disjoint,

    plus the size bound |A| >= z|H| - k(k+1)/2 with k the run count.
    Violations are collected, not raised: a violation on a set satisfying
    the hypotheses contradicts the structure theorem.
    """
    q = A.q
    if d1 == 0 or q % d1 != 0:
        raise ValueError("d1 must be a nonzero divisor of q")
    if contained_in_coset(A) is not None:
        raise ValueError("A must not be contained in a coset of a proper subgroup")
    order = q // d1
    H = Subgroup(q, order)
    comp = A.complement().mask

    runs: list[tuple[int, ...]] = []
    full_cosets: list[int] = []
    z = 0
    for rep in range(d1):
        cycle = [(rep + j * d1) % q for j in range(order)]
        in_a = [x in A for x in cycle]
        if not any(in_a):
            full_cosets.append(rep)
            continue
        z += 1
        for j in range(order):
            if not in_a[j] and in_a[j - 1]:
                run = [cycle[j]]
                while not in_a[(j + len(run)) % order]:
                    run.append(cycle[(j + len(run)) % order])
                runs.append(tuple(run))

    violations: list[str] = []
    k = len(runs)
    run_masks = []
    for run in runs:
        mk = 0
        for x in run:
            mk |= 1 << x
        run_masks.append(mk)

    # (iv) pairwise disjointness of G + {0, d1}
    expanded = [mk | shift_mask(mk, d1, q) for mk in run_masks]
    for i in range(len(runs)):
        for j in range(i + 1, len(runs)):
            if expanded[i] & expanded[j]:
                violations.append(f"condition_iv: runs {i} and {j} overlap after +{{0,d1}}")

    # link: predecessor(G) = (G - d2) ∩ A^c, one element shorter
    by_mask = {mk: i for i, mk in enumerate(run_masks)}
    pred: dict[int, int] = {}
    for i, mk in enumerate(run_masks):
        if run_masks[i].bit_count() == 1:
            continue
        shifted = shift_mask(mk, -d2 % q, q) & comp
        j = by_mask.get(shifted)
        if j is None or run_masks[j].bit_count() != mk.bit_count() - 1:
            violations.append(f"condition_ii: run {i} has no predecessor one shorter")
        else:
            pred[i] = j

    succ: dict[int, int] = {}
    for i, j in pred.items():
        if j in succ:
            violations.append(f"chain_partition: run {j} feeds two successors")
        succ[j] = i

    chains: list[tuple[tuple[int, ...], ...]] = []
    heads = [i for i, mk in enumerate(run_masks) if mk.bit_count() == 1 and i not in pred]
    used = set()
    for h in sorted(heads, key=lambda i: (min(runs[i]) % d1, seminorm(runs[i][0], q))):
        chain = [h]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        used.update(chain)
        chains.append(tuple(runs[i] for i in chain))
        g = runs[h][0]
        if (g - d2) % q not in A:
            violations.append(f"condition_iii: head {g} - d2 not in A")
    if len(used) != len(runs):
        violations.append("chain_partition: some runs belong to no chain")

    kk = k_bound if k_bound is not None else xi3(A) - A.size
    for i, mk in enumerate(run_masks):
        if mk.bit_count() > kk:
            violations.append(f"condition_i: run {i} longer than k = {kk}")

    if A.size < z * order - k * (k + 1) // 2:
        violations.append("size_bound: |A| < z|H| - k(k+1)/2")

    return ChainFamily(
        q,
        d1,
        d2,
        z,
        order,
        tuple(chains),
        tuple(full_cosets),
        k,
        tuple(violations),
    )


# ---------------------------------------------------------------------------
# the explicit construction


@dataclass(frozen=True)
class ConstructionSpec:
    m: int
    d: int  # 2^m
    ground: int  # 2^(2m)
    chains: tuple[tuple[tuple[int, int], ...], ...]  # chain -> interval (lo, hi)
    size: int
    closed_form_size: int
    density: float
    disjoint: bool


def _chain_intervals(length: int, offset: int, d: int) -> list[tuple[int, int]]:
    """Intervals of the trimmed chain phi(G_length) + offset: the j-th
    interval [j(d-1)+1, jd] for j = 1..length-1 (the head of each interval
    of G_length is dropped)."""
    return [
        (offset + j * (d - 1) + 1, offset + j * d) for j in range(1, length)
    ]


def build_construction(m: int) -> ConstructionSpec:
    """Materialize the union of trimmed chains

        phi(G_{2^m})  and  phi(B_i^(l)),  1 <= l <= m-1, 1 <= i <= m-l,

    with B_i^(l) anchored at 2^m(2^{m+1-l} - 2^{m+2-l-i} - 1) + 2^{m+1-l-i},
    inside [0, 2^{2m}].  Checks pairwise interval disjointness and the
    closed-form size 2^m(2^m-1)/2 + sum of 2^{m+1-l-i}(2^{m+1-l-i}-1)/2.
    """
    if not 2 <= m <= 12:
        raise ValueError("construction parameter m must be in [2, 12]")
    d = 1 << m
    ground = 1 << (2 * m)
    chains = [tuple(_chain_intervals(d, 0, d))]
    for l in range(1, m):
        for i in range(1, m - l + 1):
            length = 1 << (m + 1 - l - i)
            offset = d * ((1 << (m + 1 - l)) - 2 * length - 1) + length
            chains.append(tuple(_chain_intervals(length, offset, d)))

    intervals = sorted(iv for ch in chains for iv in ch)
    disjoint = all(
        intervals[i][1] < intervals[i + 1][0] for i in range(len(intervals) - 1)
    )
    size = sum(hi - lo + 1 for lo, hi in intervals)
    closed = d * (d - 1) // 2 + sum(
        (1 << (m + 1 - l - i)) * ((1 << (m + 1 - l - i)) - 1) // 2
        for l in range(1, m)
        for i in range(1, m - l + 1)
    )
    if not disjoint:
        raise AssertionError("construction intervals collide")
    lo = min(iv[0] for iv in intervals)
    hi = max(iv[1] for iv in intervals)
    if lo < 0 or hi > ground:
        raise AssertionError("construction leaves the ground interval")
    return ConstructionSpec(
        m, d, ground, tuple(chains), size, closed, size / ground, disjoint
    )


def project_to_prime(spec: ConstructionSpec) -> tuple[int, ResidueSet]:
    """Project the construction into Z_p for the least prime p >= 2^{2m}
    (direct next-prime search) and return the complement set A."""
    p = next_prime(spec.ground)
    mask = 0
    for ch in spec.chains:
        for lo, hi in ch:
            for x in range(lo, hi + 1):
                mask |= 1 << (x % p)
    image = ResidueSet(p, mask)
    if image.size != spec.size:
        raise AssertionError("projection is not injective")
    return p, image.complement()


def construction_chain_family(
    spec: ConstructionSpec, p: int, A: ResidueSet, k_bound: Optional[int] = None
) -> ChainFamily:
    """The chain family of the projected construction: gap direction
    d1 = 1, chain translation d2 = 2^m."""
    if k_bound is None:
        k_bound = sum(len(ch) for ch in spec.chains)
    return extract_chain_structure(A, 1, spec.d % p, k_bound=k_bound)


# ---------------------------------------------------------------------------
# mu(p)


@dataclass(frozen=True)
class MuRecord:
    p: int
    mu: int
    witness_count: int
    witnesses_up_to_affine: tuple[tuple[int, ...], ...]
    sqrt_bound: float  # sqrt(8p+25) - 5, applicable when mu < 2p/3
    log4_bound: float
    sqrt_bound_applicable: bool
    bounds_hold: bool
    strategy: str


def _equal_impact_mask(mask: int, p: int, shifts: list[int]) -> bool:
    """xi(2) == xi(3) for the set with this mask, via the optimal-difference
    pair sweep."""
    size = mask.bit_count()
    alphas = [(shift_mask(mask, d, p) & ~mask).bit_count() for d in range(1, p)]
    k = min(alphas)
    target = size + k
    opt = [d + 1 for d, a in enumerate(alphas) if a == k]
    for i, d1 in enumerate(opt):
        m1 = mask | shift_mask(mask, d1, p)
        for d2 in opt[i + 1 :]:
            if (m1 | shift_mask(mask, d2, p)).bit_count() == target:
                return True
    return False


def _affine_canonical(mask: int, p: int) -> tuple[int, ...]:
    elems = [i for i in range(p) if mask >> i & 1]
    best = None
    for c in range(1, p):
        imgs = sorted(c * e % p for e in elems)
        for s in range(p):
            cand = tuple(sorted((e + s) % p for e in imgs))
            if best is None or cand < best:
                best = cand
    return best


def compute_mu(p: int, strategy: str = "auto", budget: int = 1 << 22) -> MuRecord:
    """mu(p) = min |A| over proper subsets of Z_p with xi(2) = xi(3),
    with the minimal witnesses listed up to affine equivalence.

    strategy: 'full' enumerates every subset; 'bounded' scans cardinalities
    upward (translation-normalized, 0 in A) until the first hit; 'auto'
    picks 'full' when 2^p fits the budget.
    """
    if not (p >= 3 and next_prime(p) == p):
        raise ValueError("compute_mu needs an odd prime p")
    if strategy == "auto":
        strategy = "full" if (1 << p) <= budget else "bounded"

    shifts: list[int] = []  # filled per-mask inside the helpers
    if strategy == "full":
        if (1 << p) > budget:
            raise BudgetExceededError(f"2^{p} subsets exceed budget")
        mu = None
        witnesses = []
        for mask in range(1, (1 << p) - 1):
            size = mask.bit_count()
            if mu is not None and size > mu:
                continue
            if size < 2:
                continue  # a single point has xi(2)=3 > xi(3) impossible; skip
            if _equal_impact_mask(mask, p, shifts):
                if mu is None or size < mu:
                    mu = size
                    witnesses = [mask]
                elif size == mu:
                    witnesses.append(mask)
        if mu is None:
            raise AssertionError("no witness found; mu(p) <= p-1 always holds")
    elif strategy == "bounded":
        mu = None
        witnesses = []
        for size in range(2, p):
            for rest in combinations(range(1, p), size - 1):
                mask = 1
                for x in rest:
                    mask |= 1 << x
                if _equal_impact_mask(mask, p, shifts):
                    witnesses.append(mask)
            if witnesses:
                mu = size
                break
        if mu is None:
            raise AssertionError("no witness found below p")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    canon = sorted(set(_affine_canonical(mk, p) for mk in witnesses))
    sqrt_bound = math.sqrt(8 * p + 25) - 5
    log4_bound = math.log(p, 4)
    applicable = mu < 2 * p / 3
    holds = (mu > log4_bound) and (not applicable or mu >= sqrt_bound - 1e-9)
    return MuRecord(
        p,
        mu,
        len(witnesses),
        tuple(canon),
        sqrt_bound,
        log4_bound,
        applicable,
        holds,
        strategy,
    )


def mu_density_table(p_list, strategy: str = "auto") -> list[dict]:
    """Rows (p, mu, mu/p) plus the limiting-ceiling context row."""
    rows = []
    for p in p_list:
        try:
            rec = compute_mu(p, strategy)
            rows.append(
                {"p": p, "mu": rec.mu, "ratio": rec.mu / p, "bounds_hold": rec.bounds_hold}
            )
        except BudgetExceededError as exc:
            rows.append({"p": p, "error": str(exc)})
    rows.append({"note": "liminf mu(p)/p <= 5/18 (construction ceiling)", "ceiling": 5 / 18})
    return rows
