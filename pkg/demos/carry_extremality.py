"""Exhaustive carry statistics for digit sets in Z_{m^2}.

The interval digits [0, m-1] minimize the number of distinct carries;
the minimizers of the nonzero-carry-pair count all lie in the affine
orbit of the centered digits (-m/2, m/2].
"""

from zqadd.digital import (
    canonical_interval_digits,
    carry_stats,
    centered_digits,
    is_digital,
    verify_carry_extremality,
)


def main():
    for m in (3, 4, 5, 6):
        rep = verify_carry_extremality(m)
        ci = carry_stats(is_digital(canonical_interval_digits(m)))
        ce = carry_stats(is_digital(centered_digits(m)))
        print(f"m = {m}: {rep.sets_scanned} digital sets in Z_{m * m}")
        print(f"  min distinct carries  = {rep.min_distinct_carries}"
              f" ({rep.distinct_minimizer_count} minimizers,"
              f" all affine images of [0,{m - 1}]:"
              f" {rep.distinct_minimizers_in_interval_orbit})")
        print(f"  min nonzero pairs     = {rep.min_nonzero_pairs}"
              f" ({rep.nonzero_minimizer_count} minimizers,"
              f" all in the centered orbit:"
              f" {rep.nonzero_minimizers_in_centered_orbit})")
        print(f"  interval digits: carries {ci.distinct_carries},"
              f" {ci.nonzero_pair_count} nonzero pairs")
        print(f"  centered digits (standard lift): carries {ce.distinct_carries},"
              f" {ce.nonzero_pair_count} nonzero pairs")
        print()


if __name__ == "__main__":
    main()
