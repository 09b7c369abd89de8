"""Arithmetic of Z_q: residue sets, sumsets, subgroups, periods, normalization.

Sets are stored as bitmasks over the residues [0, q-1], so sumsets and
shifts are word-parallel integer operations.  Moduli are desk-scale
(bounded by MAX_MODULUS); nothing here is asymptotic.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

MAX_MODULUS = 1 << 20


class ModulusMismatchError(ValueError):
    pass


class BudgetExceededError(RuntimeError):
    pass


def _check_modulus(q: int) -> None:
    if not 1 <= q <= MAX_MODULUS:
        raise ValueError(f"modulus must be in [1, {MAX_MODULUS}], got {q}")


def shift_mask(mask: int, t: int, q: int) -> int:
    """Rotate a q-bit mask by t positions (the set S+t)."""
    t %= q
    full = (1 << q) - 1
    if t == 0:
        return mask & full
    return ((mask << t) | (mask >> (q - t))) & full


@dataclass(frozen=True)
class ResidueSet:
    """A subset of Z_q, stored as a bitmask of its residues."""

    q: int
    mask: int

    def __post_init__(self) -> None:
        _check_modulus(self.q)
        if not 0 <= self.mask < (1 << self.q):
            raise ValueError("mask has bits outside [0, q-1]")

    @classmethod
    def from_elements(cls, q: int, elements: Iterable[int]) -> "ResidueSet":
        _check_modulus(q)
        mask = 0
        for e in elements:
            if not 0 <= e < q:
                raise ValueError(f"element {e} outside [0, {q - 1}]")
            mask |= 1 << e
        return cls(q, mask)

    @classmethod
    def empty(cls, q: int) -> "ResidueSet":
        return cls(q, 0)

    @classmethod
    def full(cls, q: int) -> "ResidueSet":
        return cls(q, (1 << q) - 1)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.q) if self.mask >> i & 1)

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> (x % self.q) & 1)

    def shifted(self, t: int) -> "ResidueSet":
        return ResidueSet(self.q, shift_mask(self.mask, t, self.q))

    def dilated(self, c: int) -> "ResidueSet":
        """The set c*A.  c need not be invertible."""
        return ResidueSet.from_elements(self.q, ((c * e) % self.q for e in self.elements))

    def complement(self) -> "ResidueSet":
        return ResidueSet(self.q, ((1 << self.q) - 1) ^ self.mask)

    def union(self, other: "ResidueSet") -> "ResidueSet":
        self._check_same(other)
        return ResidueSet(self.q, self.mask | other.mask)

    def intersection(self, other: "ResidueSet") -> "ResidueSet":
        self._check_same(other)
        return ResidueSet(self.q, self.mask & other.mask)

    def _check_same(self, other: "ResidueSet") -> None:
        if self.q != other.q:
            raise ModulusMismatchError(f"moduli differ: {self.q} != {other.q}")

    def __repr__(self) -> str:
        return f"ResidueSet(q={self.q}, {{{','.join(map(str, self.elements))}}})"


# ---------------------------------------------------------------------------
# text / JSON formats


def parse_set(text: str) -> ResidueSet:
    """Parse the set literal format ``q=<int>;{e1,e2,...}``.

    Whitespace is ignored everywhere.  The element list may be empty.
    """
    s = "".join(text.split())
    if not s.startswith("q="):
        raise ValueError(f"set literal must start with 'q=': {text!r}")
    head, sep, body = s[2:].partition(";")
    if not sep:
        raise ValueError(f"set literal missing ';': {text!r}")
    try:
        q = int(head)
    except ValueError:
        raise ValueError(f"bad modulus in set literal: {text!r}") from None
    if not (body.startswith("{") and body.endswith("}")):
        raise ValueError(f"set literal elements must be brace-enclosed: {text!r}")
    inner = body[1:-1]
    if not inner:
        return ResidueSet.empty(q)
    try:
        elems = [int(tok) for tok in inner.split(",")]
    except ValueError:
        raise ValueError(f"bad element in set literal: {text!r}") from None
    return ResidueSet.from_elements(q, elems)


def format_set(A: ResidueSet) -> str:
    return f"q={A.q};{{{','.join(map(str, A.elements))}}}"


def set_to_json(A: ResidueSet) -> dict:
    return {"q": A.q, "elements": list(A.elements)}


def set_from_json(obj) -> ResidueSet:
    if isinstance(obj, str):
        obj = json.loads(obj)
    return ResidueSet.from_elements(obj["q"], obj["elements"])


# ---------------------------------------------------------------------------
# factorization helpers (trial division; moduli are desk-scale)


@lru_cache(maxsize=None)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization of n >= 1 as ((p, exponent), ...)."""
    if n < 1:
        raise ValueError("factorize expects n >= 1")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def smallest_prime_factor(n: int) -> int:
    return factorize(n)[0][0]


def v_p(p: int, n: int) -> int:
    """p-adic valuation of n (n != 0)."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return factorize(n)[0] == (n, 1)


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    k = max(n, 2)
    while not is_prime(k):
        k += 1
    return k


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple[int, ...]:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


def units(q: int) -> tuple[int, ...]:
    return tuple(c for c in range(1, q) if math.gcd(c, q) == 1)


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Subgroup:
    """The subgroup of Z_q of a given order n | q, generated by q/n."""

    q: int
    order: int

    def __post_init__(self) -> None:
        if self.order < 1 or self.q % self.order != 0:
            raise ValueError(f"order {self.order} does not divide modulus {self.q}")

    @property
    def generator(self) -> int:
        return self.q // self.order

    @property
    def mask(self) -> int:
        g = self.generator
        m = 0
        for j in range(self.order):
            m |= 1 << (j * g)
        return m

    def as_set(self) -> ResidueSet:
        return ResidueSet(self.q, self.mask)

    @property
    def is_trivial(self) -> bool:
        return self.order == 1

    @property
    def is_full(self) -> bool:
        return self.order == self.q


def proper_nontrivial_subgroups(q: int) -> list[Subgroup]:
    return [Subgroup(q, n) for n in divisors(q) if 1 < n < q]


@dataclass(frozen=True)
class AffineMap:
    """x -> scale*x + shift on Z_q, with invertible scale."""

    scale: int
    shift: int
    q: int

    def __post_init__(self) -> None:
        if math.gcd(self.scale, self.q) != 1:
            raise ValueError(f"scale {self.scale} not invertible mod {self.q}")
        if not 0 <= self.shift < self.q:
            raise ValueError("shift must lie in [0, q-1]")

    def apply(self, A: ResidueSet) -> ResidueSet:
        if A.q != self.q:
            raise ModulusMismatchError("affine map modulus differs from set modulus")
        return A.dilated(self.scale).shifted(self.shift)

    def apply_point(self, x: int) -> int:
        return (self.scale * x + self.shift) % self.q

    def inverse(self) -> "AffineMap":
        c = pow(self.scale, -1, self.q)
        return AffineMap(c, (-c * self.shift) % self.q, self.q)


# ---------------------------------------------------------------------------
# operations


def sumset(A: ResidueSet, B: ResidueSet) -> ResidueSet:
    """A + B = {a + b mod q}."""
    A._check_same(B)
    return ResidueSet(A.q, sumset_mask(A.mask, B.mask, A.q))


def sumset_mask(a_mask: int, b_mask: int, q: int) -> int:
    # shift the larger mask by the elements of the smaller one
    if a_mask.bit_count() < b_mask.bit_count():
        a_mask, b_mask = b_mask, a_mask
    out = 0
    full = (1 << q) - 1
    t = 0
    while b_mask:
        if b_mask & 1:
            out |= (a_mask << t) | (a_mask >> (q - t)) if t else a_mask
        b_mask >>= 1
        t += 1
    return out & full


def interval(a: int, b: int, q: int) -> ResidueSet:
    """Projection of the integer interval [a, b'] to Z_q, where b' is the
    smallest integer >= a congruent to b mod q."""
    _check_modulus(q)
    length = (b - a) % q + 1
    if length >= q:
        return ResidueSet.full(q)
    mask = shift_mask((1 << length) - 1, a % q, q)
    return ResidueSet(q, mask)


def seminorm(x: int, q: int) -> int:
    """Distance from zero in Z_q: min(x mod q, q - x mod q)."""
    x %= q
    return min(x, q - x)


def period_group(S: ResidueSet) -> Subgroup:
    """H = {t : S + t = S}, the stabilizer of S under translation."""
    if S.mask == 0:
        raise ValueError("period group of the empty set is undefined")
    q = S.q
    # every period group is <d> for a divisor d; the smallest divisor that
    # fixes S generates the whole stabilizer
    for d in divisors(q):
        if shift_mask(S.mask, d, q) == S.mask:
            return Subgroup(q, q // d)
    raise AssertionError("unreachable: q is always a period")


@dataclass(frozen=True)
class KneserReport:
    holds: bool
    H: Subgroup
    lhs: int
    rhs: int


def kneser_check(A: ResidueSet, B: ResidueSet) -> KneserReport:
    """Check |A+B| >= |A+H| + |B+H| - |H| with H the period group of A+B."""
    A._check_same(B)
    if A.mask == 0 or B.mask == 0:
        raise ValueError("kneser_check needs nonempty sets")
    S = sumset(A, B)
    H = period_group(S)
    h_set = H.as_set()
    lhs = S.size
    rhs = sumset(A, h_set).size + sumset(B, h_set).size - H.order
    return KneserReport(lhs >= rhs, H, lhs, rhs)


@dataclass(frozen=True)
class NormalizedDifference:
    """a' == a (mod q) factored as a' = a1*a2 with a1 | q and gcd(a2, q) = 1."""

    input: int
    q: int
    value: int
    divisor_part: int
    coprime_part: int


def normalize_difference(a: int, q: int) -> NormalizedDifference:
    """Replace a by a congruent a' that splits into a q-divisor times a
    q-coprime factor.

    a' = q * prod{p | q prime : v_p(a) = v_p(q)} + a.  For a == 0 (mod q)
    the convention a' = q (divisor part q, coprime part 1) is used; the
    general recipe does not apply there.
    """
    _check_modulus(q)
    if a % q == 0:
        return NormalizedDifference(a, q, q, q, 1)
    if a <= 0:
        a %= q
    primes = [p for p, _ in factorize(q)] if q > 1 else []
    bump = 1
    for p in primes:
        if v_p(p, a) == v_p(p, q):
            bump *= p
    value = q * bump + a
    a1 = 1
    for p in primes:
        a1 *= p ** min(v_p(p, value), v_p(p, q))
    a2 = value // a1
    assert q % a1 == 0 and math.gcd(a2, q) == 1 and value % q == a % q
    return NormalizedDifference(a, q, value, a1, a2)


@dataclass(frozen=True)
class SubgroupLemmaReport:
    q: int
    m: int
    subgroup_order: int
    coset_bound_holds: bool
    subset_expansion_holds: bool
    subset_expansion_exhaustive: bool
    gcd_bound_holds: bool

    @property
    def holds(self) -> bool:
        return self.coset_bound_holds and self.subset_expansion_holds and self.gcd_bound_holds


def subgroup_lemma_check(
    A: ResidueSet,
    H: Subgroup,
    subset_samples: int = 200,
    rng=None,
) -> SubgroupLemmaReport:
    """Check the three subgroup-intersection/expansion inequalities for a
    digital set A and a proper nontrivial subgroup H:

      (i)   p * |A ∩ (H+t)| <= min(m, |H|) for every coset,
      (ii)  |A' + H| >= p * |A'| for nonempty A' ⊆ A (exhaustive when small,
            sampled otherwise),
      (iii) |A+H| >= gcd(m|H|, q) >= max(p*max(m,|H|), min(q, 4m/3 + |H|)),

    where p is the smallest prime factor of q.
    """
    from . import digital  # local import: digital depends on core

    q = A.q
    if H.q != q:
        raise ModulusMismatchError("subgroup modulus differs from set modulus")
    if H.is_trivial or H.is_full:
        raise ValueError("subgroup must be proper and nontrivial")
    if digital.is_digital(A) is None:
        raise ValueError("subgroup_lemma_check requires a digital set")
    m = A.size
    n = H.order
    p = smallest_prime_factor(q)
    h_mask = H.mask

    cap = min(m, n)
    coset_ok = True
    occupied = 0
    for t in range(q // n):
        inter = (A.mask & shift_mask(h_mask, t, q)).bit_count()
        if inter:
            occupied += 1
        if p * inter > cap:
            coset_ok = False

    # (ii): |A'+H| = |H| * (#cosets meeting A'); exhaustive for small m
    elems = A.elements
    exhaustive = m <= 12
    if exhaustive:
        subset_iter = range(1, 1 << m)
    else:
        import random

        rng = rng or random.Random(0)
        subset_iter = (rng.randrange(1, 1 << m) for _ in range(subset_samples))
    expansion_ok = True
    for sub in subset_iter:
        a_mask = 0
        for i in range(m):
            if sub >> i & 1:
                a_mask |= 1 << elems[i]
        cosets = sum(
            1 for t in range(q // n) if a_mask & shift_mask(h_mask, t, q)
        )
        if n * cosets < p * a_mask.bit_count():
            expansion_ok = False
            break

    g = math.gcd(m * n, q)
    a_plus_h = n * occupied
    # the 4m/3 + |H| branch needs m >= 3: its proof splits on powers of 2
    # and uses m >= 3 in the base case; it is false for m = 2, q = 8,
    # |H| = 2 (gcd = 4 < 4m/3 + 2)
    lower_line_ok = m < 3 or 3 * g >= 4 * m + 3 * n or g >= q
    gcd_ok = a_plus_h >= g and g >= p * max(m, n) and lower_line_ok
    return SubgroupLemmaReport(q, m, n, coset_ok, expansion_ok, exhaustive, gcd_ok)


def crt_embed(A: ResidueSet, q2: int) -> ResidueSet:
    """Embed A x {0} into Z_{q*q2} via CRT (gcd(q, q2) = 1 required)."""
    q1 = A.q
    if math.gcd(q1, q2) != 1:
        raise ValueError("CRT embedding needs coprime moduli")
    q = q1 * q2
    # x == a (mod q1), x == 0 (mod q2)
    inv = pow(q2, -1, q1)
    return ResidueSet.from_elements(q, ((a * inv % q1) * q2 % q for a in A.elements))
