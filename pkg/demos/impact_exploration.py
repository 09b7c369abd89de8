"""A walk through the impact function on small cyclic groups.

Shows the boundary identities, the alpha interpretation of xi(2), and a
set where a non-obvious difference wins.
"""

from zqadd.core import ResidueSet, interval, period_group
from zqadd.impact import xi_naive
from zqadd.progressions import alpha_profile, decompose, optimal_differences


def section(title):
    print()
    print(title)
    print("-" * len(title))


def main():
    q = 12
    A = ResidueSet.from_elements(q, [0, 1, 2, 7, 8])
    section(f"The set A = {sorted(A.elements)} in Z_{q}")
    for n in range(0, q - A.size + 2):
        r = xi_naive(A, n)
        wit = sorted(r.witness.elements) if r.witness else None
        print(f"  xi({n}) = {r.value:2d}   witness B = {wit}")
    print(f"  period group order: {period_group(A).order}")

    section("alpha profile: xi(2) = |A| + min_t alpha_t")
    prof = alpha_profile(A)
    for t, a in sorted(prof.items()):
        marker = "  <- optimal" if t in optimal_differences(A) else ""
        print(f"  alpha_{t:2d} = {a}{marker}")
    best = optimal_differences(A)[0]
    dec = decompose(A, best)
    print(f"  decomposition at t={best}: cosets {dec.full_cosets}, "
          f"progressions {dec.progressions}")

    section("An interval grows one element per step")
    I = interval(0, 3, 13)
    print(" ", [xi_naive(I, n).value for n in range(1, 10)])


if __name__ == "__main__":
    main()
