"""
Empirical scan for arbitrary sets
=================================

For a set A with gcd 1 and at least two elements one expects the inequality
to hold once w and z are large enough. This scan reports how far the
exceptions reach for random sets. It is a report, nothing is asserted.

A set without 1 has p_A(w) = 0 for some small w, which makes the left side
vanish; those exceptions recur at every sum, so the informative column is the
least w from which the scan sees no exception.
"""

from apartitions.bo import conjecture_scan, random_gcd1_sets

sets = random_gcd1_sets(8, 12, sizes=[2, 3, 4], seed=2024)
for row in conjecture_scan(sets, bound=80, part_min=2):
    print(f"{row.set:>22}  exceptions={row.exceptions:4d}  largest sum={row.largest_exception_sum}  "
          f"clear from w >= {row.min_part_threshold}")
